#pragma once

#include <array>
#include <map>
#include <vector>

#include "aoip/multi_path.hpp"
#include "aoip/single_path.hpp"

namespace aoip {

/// Raised when an oracle is asked for an instance beyond its capacity guard.
struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PricedValue {
  double price;
  double cost;
};

/// Exact single-path DP, memoized over (t, foreseen AoI, s). Prices are found
/// by golden-section minimization of the Bellman objective, independent of
/// the hazard-inversion path used by the online algorithms.
class SinglePathOracle {
 public:
  explicit SinglePathOracle(SinglePathProblem p);  // requires T - D <= 12
  PricedValue solve(int t, int a_foreseen, int s_prev);

 private:
  SinglePathProblem p_;
  std::map<std::array<int, 3>, PricedValue> memo_;
};

struct MultiDecision {
  int target;
  double price;
  double cost;
};

/// Exact multi-path DP under the single-target rule (price only the path with
/// maximum foreseen AoI). Memoized over (t, AoI vector, s).
class MultiPathOracle {
 public:
  explicit MultiPathOracle(MultiPathProblem p);  // requires T - max D <= 12, N <= 8
  MultiDecision solve(int t, const std::vector<int>& aoi, int s_prev);

 private:
  MultiPathProblem p_;
  std::map<std::vector<int>, MultiDecision> memo_;
};

/// Expected cost of following the backward-clustered approximation policy
/// under the exact dynamics, from the given state. Same capacity guards as
/// MultiPathOracle.
double evaluate_approx_policy(const MultiPathProblem& p, int t, const std::vector<int>& aoi,
                              int s_prev);

/// Exhaustive two-path policy search over a full price-vector grid, used to
/// verify that minimizers price at most one path, on the max-foreseen-AoI
/// path. N must be 2, T - max D <= 5, grid_step >= 0.25.
class ExhaustiveTwoPathOracle {
 public:
  ExhaustiveTwoPathOracle(MultiPathProblem p, double grid_step);

  struct Node {
    std::array<double, 2> prices;
    double cost;
    bool has_structured_minimizer;  // some cost-minimal grid vector prices at
                                    // most one path, and that path has the
                                    // maximum foreseen AoI
  };

  Node solve(int t, std::array<int, 2> aoi, int s_prev);

  struct Stats {
    int nodes = 0;
    int structured_nodes = 0;
  };
  Stats stats() const { return stats_; }

 private:
  MultiPathProblem p_;
  double step_;
  std::map<std::array<int, 4>, Node> memo_;
  Stats stats_;
};

}  // namespace aoip
