#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "aoip/multi_path.hpp"
#include "aoip/single_path.hpp"

namespace aoip {

enum class PolicyKind {
  OptimalSingle,
  ApproxMulti,
  RecedingHorizon,
  FixedPrice,
  ZeroPrice,
  MyopicMaxCurrentAoi,
};

std::string to_string(PolicyKind kind);
PolicyKind policy_from_string(const std::string& name);

struct RunConfig {
  std::uint64_t seed = 1;
  int n_runs = 1;
  PolicyKind policy = PolicyKind::ZeroPrice;
  int window = 0;          // RecedingHorizon
  double fixed_price = 0;  // FixedPrice
};

struct SlotRecord {
  int t = 0;
  int arrival = 0;
  std::vector<double> prices;  // one entry per path
  int target = -1;             // priced path, -1 when all prices are zero
  int accepted = 0;
  int accepted_path = -1;
  double sensitivity = -1.0;  // drawn cost sensitivity, -1 when no arrival
  double payment = 0.0;
  std::vector<double> foreseen;  // A_i(t + D_i)
  std::vector<double> actual;    // A_i(t)
};

struct Trajectory {
  std::vector<SlotRecord> slots;  // t = 0..T
  double discounted_cost = 0.0;   // realized rho-discounted cost (paid payments)
  double total_payment = 0.0;
  int n_samples = 0;
};

Trajectory run_single_path(const SinglePathProblem& p, int a0, const RunConfig& cfg);
Trajectory run_multi_path(const MultiPathProblem& p, const std::vector<int>& a0,
                          const RunConfig& cfg);

struct MonteCarloSummary {
  std::string policy;
  double mean_cost = 0.0;
  double std_error = 0.0;
  double mean_payment = 0.0;
  double mean_samples = 0.0;
  int n_runs = 0;
  std::uint64_t seed = 0;
};

// Aggregates independent runs; run i uses seed + i.
MonteCarloSummary monte_carlo(const SinglePathProblem& p, int a0, const RunConfig& cfg);
MonteCarloSummary monte_carlo(const MultiPathProblem& p, const std::vector<int>& a0,
                              const RunConfig& cfg);

void write_trajectory_csv(std::ostream& os, const Trajectory& traj,
                          const std::string& meta_comment);

}  // namespace aoip
