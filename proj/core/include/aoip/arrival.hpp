#pragma once

#include <stdexcept>

namespace aoip {

/// Two-state Markov chain for driver arrivals at the gateway.
/// alpha: P(arrival | previous slot had no arrival)
/// beta:  P(no arrival | previous slot had an arrival)
struct ArrivalChain {
  double alpha = 0.0;
  double beta = 0.0;
};

inline double expected_arrival(const ArrivalChain& chain, int s_prev) {
  if (s_prev != 0 && s_prev != 1) throw std::domain_error("expected_arrival: s_prev must be 0 or 1");
  return s_prev * (1.0 - chain.beta) + (1 - s_prev) * chain.alpha;
}

/// Deterministic step given one uniform variate in [0,1).
inline int step(const ArrivalChain& chain, int s_prev, double rand) {
  return rand < expected_arrival(chain, s_prev) ? 1 : 0;
}

}  // namespace aoip
