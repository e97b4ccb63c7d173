#pragma once

#include <string>
#include <vector>

#include "aoip/multi_path.hpp"
#include "aoip/single_path.hpp"

namespace aoip {

/// Experiment description as loaded from a JSON document. One schema serves
/// single- and multi-path problems: scalar `delays` / `initial_aoi` promote to
/// one-element lists.
struct ExperimentConfig {
  int horizon = 0;  // key "T"
  std::vector<int> delays;
  double rho = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  DistKind dist_kind = DistKind::Uniform;
  double dist_param1 = 0.0;
  double dist_param2 = 0.0;
  double eps = 0.0;  // 0 → default 1e-6 * max delay
  std::vector<int> initial_aoi;

  bool is_single_path() const { return delays.size() == 1; }
  int max_delay() const;
  double effective_eps() const;

  CostDistribution make_distribution() const;
  SinglePathProblem make_single_path() const;  // requires exactly one delay
  MultiPathProblem make_multi_path() const;
};

/// Parses and validates a config document. Throws std::invalid_argument with
/// a message naming the offending field.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);  // std::runtime_error on I/O failure

/// Serializes the config back to JSON (canonical field names, lists kept as
/// lists). Used for CSV metadata headers.
std::string config_to_json(const ExperimentConfig& cfg);

std::string dist_kind_to_string(DistKind kind);
DistKind dist_kind_from_string(const std::string& name);

}  // namespace aoip
