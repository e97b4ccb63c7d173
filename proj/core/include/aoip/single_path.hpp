#pragma once

#include <iosfwd>
#include <vector>

#include "aoip/arrival.hpp"
#include "aoip/cost_dist.hpp"

namespace aoip {

/// Finite-horizon pricing MDP for a single non-shortest path with travel
/// delay `delay`. Decision slots are t in {0, ..., horizon - delay}.
struct SinglePathProblem {
  int horizon;  // T
  int delay;    // D
  double rho;
  ArrivalChain chain;
  CostDistribution dist;
  double eps;     // price-search tolerance, in price units
  double cutoff;  // hazard cutoff from check_regularity

  // Validates invariants and derives the hazard cutoff.
  static SinglePathProblem make(int horizon, int delay, double rho, ArrivalChain chain,
                                CostDistribution dist, double eps);

  int last_decision_slot() const { return horizon - delay; }
};

struct SinglePathState {
  int a_foreseen;  // foreseen AoI A(t+D)
  int s_prev;      // arrival bit of the previous slot
};

struct TransitionTriple {
  double q_sample;     // arrival, offer accepted
  double q_noarrival;  // no arrival
  double q_reject;     // arrival, offer rejected
};

TransitionTriple transition_probs(const SinglePathProblem& p, const SinglePathState& st,
                                  double price);

// Foreseen AoI plus the expected payment at this slot.
double immediate_cost(const SinglePathProblem& p, const SinglePathState& st, double price);

// Cost at the last decision slot: the AoI at the horizon, regardless of s_prev.
double terminal_cost(const SinglePathState& st);

/// Price solving the first-order condition for a given continuation gap
/// delta_c = C*(no-sample, s=1) - C*(just-sampled). Saturates at `delay` when
/// the hazard cannot reach rho * delta_c / delay.
double solve_price(const SinglePathProblem& p, double delta_c);

/// Precomputed optimal costs C*_t(D, 1) of the just-sampled state for every
/// decision slot t. values()[horizon - delay] == delay exactly.
class LookupTable {
 public:
  explicit LookupTable(std::vector<double> c_bar) : c_bar_(std::move(c_bar)) {}
  const std::vector<double>& values() const { return c_bar_; }
  double at(int t) const { return c_bar_.at(static_cast<std::size_t>(t)); }
  int size() const { return static_cast<int>(c_bar_.size()); }

  void write_csv(std::ostream& os) const;
  static LookupTable read_csv(std::istream& is);

 private:
  std::vector<double> c_bar_;  // index t = 0..T-D
};

LookupTable build_lookup_table(const SinglePathProblem& p);

struct OnlinePriceResult {
  double price = 0.0;
  bool in_horizon = true;  // false for queries after the last decision slot
};

/// Optimal price at slot t for foreseen AoI a_foreseen, computed by one
/// backward pass of length horizon - delay - t against the lookup table.
OnlinePriceResult optimal_price_online(const SinglePathProblem& p, int t, int a_foreseen,
                                       int s_prev, const LookupTable& table);

/// Receding-horizon price: truncates the problem to horizon t + window and
/// prices slot t there. window must exceed the travel delay.
double receding_horizon_price(const SinglePathProblem& p, int window, int t, int a_foreseen,
                              int s_prev);

}  // namespace aoip
