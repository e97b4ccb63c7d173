#include "aoip/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace aoip {

namespace {

using nlohmann::json;

[[noreturn]] void bad_field(const std::string& field, const std::string& why) {
  throw std::invalid_argument("config field '" + field + "': " + why);
}

double require_number(const json& doc, const std::string& field) {
  if (!doc.contains(field)) bad_field(field, "missing");
  const json& v = doc.at(field);
  if (!v.is_number()) bad_field(field, "must be a number");
  return v.get<double>();
}

int require_int(const json& doc, const std::string& field) {
  if (!doc.contains(field)) bad_field(field, "missing");
  const json& v = doc.at(field);
  if (!v.is_number_integer()) bad_field(field, "must be an integer");
  return v.get<int>();
}

// Scalar or list of positive integers, promoted to a list.
std::vector<int> int_list(const json& doc, const std::string& field) {
  if (!doc.contains(field)) bad_field(field, "missing");
  const json& v = doc.at(field);
  std::vector<int> out;
  if (v.is_number_integer()) {
    out.push_back(v.get<int>());
  } else if (v.is_array()) {
    if (v.empty()) bad_field(field, "must be nonempty");
    for (const json& e : v) {
      if (!e.is_number_integer()) bad_field(field, "entries must be integers");
      out.push_back(e.get<int>());
    }
  } else {
    bad_field(field, "must be an integer or a list of integers");
  }
  for (int x : out)
    if (x < 1) bad_field(field, "entries must be positive");
  return out;
}

}  // namespace

std::string dist_kind_to_string(DistKind kind) { return to_string(kind); }

DistKind dist_kind_from_string(const std::string& name) {
  if (name == "uniform") return DistKind::Uniform;
  if (name == "truncated-normal") return DistKind::TruncatedNormal;
  if (name == "truncated-logistic") return DistKind::TruncatedLogistic;
  if (name == "truncated-exponential") return DistKind::TruncatedExponential;
  bad_field("distribution.kind", "unknown kind '" + name + "'");
}

int ExperimentConfig::max_delay() const {
  return *std::max_element(delays.begin(), delays.end());
}

double ExperimentConfig::effective_eps() const {
  return eps > 0.0 ? eps : 1e-6 * max_delay();
}

CostDistribution ExperimentConfig::make_distribution() const {
  switch (dist_kind) {
    case DistKind::Uniform: return CostDistribution::uniform();
    case DistKind::TruncatedNormal: return CostDistribution::truncated_normal(dist_param1, dist_param2);
    case DistKind::TruncatedLogistic: return CostDistribution::truncated_logistic(dist_param1, dist_param2);
    case DistKind::TruncatedExponential: return CostDistribution::truncated_exponential(dist_param1);
  }
  throw std::invalid_argument("config field 'distribution.kind': unknown kind");
}

SinglePathProblem ExperimentConfig::make_single_path() const {
  if (delays.size() != 1)
    throw std::invalid_argument("config field 'delays': single-path command needs exactly one delay");
  return SinglePathProblem::make(horizon, delays[0], rho, ArrivalChain{alpha, beta},
                                 make_distribution(), effective_eps());
}

MultiPathProblem ExperimentConfig::make_multi_path() const {
  return MultiPathProblem::make(horizon, delays, rho, ArrivalChain{alpha, beta},
                                make_distribution(), effective_eps());
}

ExperimentConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("config must be a JSON object");

  ExperimentConfig cfg;
  cfg.horizon = require_int(doc, "T");
  cfg.delays = int_list(doc, "delays");
  cfg.rho = require_number(doc, "rho");
  cfg.alpha = require_number(doc, "alpha");
  cfg.beta = require_number(doc, "beta");

  if (!doc.contains("distribution")) bad_field("distribution", "missing");
  const json& dist = doc.at("distribution");
  if (!dist.is_object()) bad_field("distribution", "must be an object {kind, params}");
  if (!dist.contains("kind") || !dist.at("kind").is_string())
    bad_field("distribution.kind", "must be a string");
  cfg.dist_kind = dist_kind_from_string(dist.at("kind").get<std::string>());
  json params = dist.value("params", json::object());
  if (!params.is_object()) bad_field("distribution.params", "must be an object");
  switch (cfg.dist_kind) {
    case DistKind::Uniform:
      break;
    case DistKind::TruncatedNormal:
      cfg.dist_param1 = require_number(params, "mean");
      cfg.dist_param2 = require_number(params, "variance");
      break;
    case DistKind::TruncatedLogistic:
      cfg.dist_param1 = require_number(params, "location");
      cfg.dist_param2 = require_number(params, "scale");
      break;
    case DistKind::TruncatedExponential:
      cfg.dist_param1 = require_number(params, "rate");
      break;
  }

  if (doc.contains("eps")) {
    cfg.eps = require_number(doc, "eps");
    if (!(cfg.eps > 0.0)) bad_field("eps", "must be positive");
  }
  cfg.initial_aoi = doc.contains("initial_aoi")
                        ? int_list(doc, "initial_aoi")
                        : std::vector<int>(cfg.delays.size(), 1);
  if (cfg.initial_aoi.size() != cfg.delays.size())
    bad_field("initial_aoi", "length must match delays");

  // Cross-field validation with field-level messages; problem factories
  // re-check the same invariants.
  if (cfg.horizon <= cfg.max_delay()) bad_field("T", "must exceed the maximum delay");
  if (!(cfg.rho > 0.0 && cfg.rho < 1.0)) bad_field("rho", "must lie in (0,1)");
  if (cfg.alpha < 0.0 || cfg.alpha > 1.0) bad_field("alpha", "must lie in [0,1]");
  if (cfg.beta < 0.0 || cfg.beta > 1.0) bad_field("beta", "must lie in [0,1]");
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string config_to_json(const ExperimentConfig& cfg) {
  json params = json::object();
  switch (cfg.dist_kind) {
    case DistKind::Uniform:
      break;
    case DistKind::TruncatedNormal:
      params = {{"mean", cfg.dist_param1}, {"variance", cfg.dist_param2}};
      break;
    case DistKind::TruncatedLogistic:
      params = {{"location", cfg.dist_param1}, {"scale", cfg.dist_param2}};
      break;
    case DistKind::TruncatedExponential:
      params = {{"rate", cfg.dist_param1}};
      break;
  }
  json doc{{"T", cfg.horizon},
           {"delays", cfg.delays},
           {"rho", cfg.rho},
           {"alpha", cfg.alpha},
           {"beta", cfg.beta},
           {"distribution", {{"kind", dist_kind_to_string(cfg.dist_kind)}, {"params", params}}},
           {"eps", cfg.effective_eps()},
           {"initial_aoi", cfg.initial_aoi}};
  return doc.dump();
}

}  // namespace aoip
