#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "aoip/arrival.hpp"
#include "aoip/cost_dist.hpp"

namespace aoip {

/// Pricing MDP over N non-shortest paths with per-path travel delays.
/// Decision slots are t in {0, ..., horizon - max delay}.
struct MultiPathProblem {
  int horizon;
  std::vector<int> delays;
  double rho;
  ArrivalChain chain;
  CostDistribution dist;
  double eps;
  double cutoff;

  static MultiPathProblem make(int horizon, std::vector<int> delays, double rho,
                               ArrivalChain chain, CostDistribution dist, double eps);

  int n_paths() const { return static_cast<int>(delays.size()); }
  int max_delay() const;
  int last_decision_slot() const { return horizon - max_delay(); }
};

/// aoi[i] is the foreseen AoI A_i(t + D_i). Real-valued to admit the
/// clustered half-integer states; integer-valued in exact computations.
struct MultiPathState {
  std::vector<double> aoi;
  int last_sampled = -1;  // path index, -1 when no path was sampled last slot
  int s_prev = 0;
};

/// Index of the maximum foreseen AoI; ties broken by the lowest index.
int select_target_path(const std::vector<double>& aoi);

/// Path maximizing the driver's net payoff p_i - x * D_i, or -1 when every
/// utility is negative. Ties broken by the lowest index.
int driver_choice(const std::vector<double>& prices, const std::vector<int>& delays, double x);

/// Probability, conditional on an arrival, that the driver picks each path
/// under the given price vector. Exact piecewise integration of the choice
/// rule over the cost-sensitivity distribution.
std::vector<double> driver_choice_probs(const std::vector<double>& prices,
                                        const std::vector<int>& delays,
                                        const CostDistribution& dist);

double immediate_cost_multi(const MultiPathProblem& p, const MultiPathState& st, int target,
                            double price);

/// Replaces the target entry with D_target + (k - j) / 2, the average AoI a
/// path resampled somewhere in the last k - j slots would carry.
std::vector<double> clustered_aoi_update(std::vector<double> aoi, int target, int delay_target,
                                         int k, int j);

struct ApproxDecision {
  int target = 0;
  double price = 0.0;
  double predicted_cost = 0.0;
  // Clustered AoI vectors materialized, including the slot-t state and its
  // sampled-branch update: (K+1)(K+2)/2 + K + 1 for lookahead K >= 1.
  std::size_t clustered_vectors = 0;
};

/// Backward-clustered approximation of the online pricing decision at slot t.
/// Groups future states by the number of paths sampled since t, reducing the
/// exponential branching tree to one quadratic layer structure per query.
ApproxDecision approx_price_online(const MultiPathProblem& p, int t, const MultiPathState& st);

/// Worst-case gap of the clustered approximation:
/// (rho^(g(N)+1) - rho^(T - max D - t + 1)) / (1 - rho)^2.
/// g_of_n maps the path count to the resampling cycle length and is supplied
/// by the caller.
double error_bound(const MultiPathProblem& p, int t, const std::function<int(int)>& g_of_n);

}  // namespace aoip
