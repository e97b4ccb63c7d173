#include "aoip/sim.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <random>
#include <stdexcept>

namespace aoip {

std::string to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::OptimalSingle: return "optimal-single";
    case PolicyKind::ApproxMulti: return "approx-multi";
    case PolicyKind::RecedingHorizon: return "receding-horizon";
    case PolicyKind::FixedPrice: return "fixed-price";
    case PolicyKind::ZeroPrice: return "zero-price";
    case PolicyKind::MyopicMaxCurrentAoi: return "myopic-max-current-aoi";
  }
  return "unknown";
}

PolicyKind policy_from_string(const std::string& name) {
  if (name == "optimal-single") return PolicyKind::OptimalSingle;
  if (name == "approx-multi") return PolicyKind::ApproxMulti;
  if (name == "receding-horizon") return PolicyKind::RecedingHorizon;
  if (name == "fixed-price") return PolicyKind::FixedPrice;
  if (name == "zero-price") return PolicyKind::ZeroPrice;
  if (name == "myopic-max-current-aoi") return PolicyKind::MyopicMaxCurrentAoi;
  throw std::invalid_argument("unknown policy: " + name);
}

namespace {

double uniform01(std::mt19937_64& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

}  // namespace

Trajectory run_single_path(const SinglePathProblem& p, int a0, const RunConfig& cfg) {
  if (a0 < 1) throw std::invalid_argument("run_single_path: initial AoI must be positive");
  const int m = p.last_decision_slot();
  std::mt19937_64 rng(cfg.seed);
  LookupTable table = cfg.policy == PolicyKind::OptimalSingle
                          ? build_lookup_table(p)
                          : LookupTable(std::vector<double>(static_cast<std::size_t>(m) + 1, 0.0));

  Trajectory traj;
  traj.slots.reserve(static_cast<std::size_t>(p.horizon) + 1);
  int a = a0 + p.delay;  // foreseen AoI A(t + D) at t = 0
  int s_prev = 0;
  std::vector<int> return_slots;

  for (int t = 0; t <= p.horizon; ++t) {
    double price = 0.0;
    if (t < m) {
      switch (cfg.policy) {
        case PolicyKind::OptimalSingle:
          price = optimal_price_online(p, t, a, s_prev, table).price;
          break;
        case PolicyKind::RecedingHorizon:
          price = receding_horizon_price(p, cfg.window, t, a, s_prev);
          break;
        case PolicyKind::FixedPrice:
          price = std::min(cfg.fixed_price, static_cast<double>(p.delay));
          break;
        case PolicyKind::ZeroPrice:
          price = 0.0;
          break;
        default:
          throw std::invalid_argument("policy not applicable to a single-path problem");
      }
    }
    int arrival = step(p.chain, s_prev, uniform01(rng));
    double x = -1.0;
    int accepted = 0;
    double payment = 0.0;
    if (arrival) {
      x = p.dist.quantile(uniform01(rng));
      if (price - x * p.delay >= 0.0) {
        accepted = 1;
        payment = price;
      }
    }
    if (t < m)
      traj.discounted_cost += std::pow(p.rho, t) * (a + payment);
    else if (t == m)
      traj.discounted_cost += std::pow(p.rho, t) * a;  // terminal: A(T)
    traj.total_payment += payment;
    traj.n_samples += accepted;

    SlotRecord rec;
    rec.t = t;
    rec.arrival = arrival;
    rec.prices = {price};
    rec.target = price > 0.0 ? 0 : -1;
    rec.accepted = accepted;
    rec.accepted_path = accepted ? 0 : -1;
    rec.sensitivity = x;
    rec.payment = payment;
    rec.foreseen = {static_cast<double>(a)};
    traj.slots.push_back(std::move(rec));

    if (accepted) return_slots.push_back(t + p.delay);
    a = accepted ? p.delay : a + 1;
    s_prev = arrival;
  }

  // Actual AoI series: resets to D exactly D slots after each acceptance.
  double actual = a0;
  for (int t = 0; t <= p.horizon; ++t) {
    if (t > 0) {
      bool returned = std::find(return_slots.begin(), return_slots.end(), t) != return_slots.end();
      actual = returned ? p.delay : actual + 1;
    }
    traj.slots[static_cast<std::size_t>(t)].actual = {actual};
  }
  return traj;
}

Trajectory run_multi_path(const MultiPathProblem& p, const std::vector<int>& a0,
                          const RunConfig& cfg) {
  const int n = p.n_paths();
  if (static_cast<int>(a0.size()) != n)
    throw std::invalid_argument("run_multi_path: initial AoI size mismatch");
  for (int v : a0)
    if (v < 1) throw std::invalid_argument("run_multi_path: initial AoI must be positive");
  const int m = p.last_decision_slot();
  std::mt19937_64 rng(cfg.seed);

  Trajectory traj;
  std::vector<double> foreseen(static_cast<std::size_t>(n));
  std::vector<double> actual(a0.begin(), a0.end());
  for (int i = 0; i < n; ++i) foreseen[i] = a0[i] + p.delays[i];
  int s_prev = 0;
  std::vector<std::pair<int, int>> returns;  // (slot, path)

  for (int t = 0; t <= p.horizon; ++t) {
    if (t > 0) {
      for (int i = 0; i < n; ++i) {
        bool returned = std::find(returns.begin(), returns.end(), std::make_pair(t, i)) !=
                        returns.end();
        actual[i] = returned ? p.delays[i] : actual[i] + 1;
      }
    }
    std::vector<double> prices(static_cast<std::size_t>(n), 0.0);
    int target = -1;
    if (t < m) {
      switch (cfg.policy) {
        case PolicyKind::ApproxMulti: {
          ApproxDecision dec = approx_price_online(p, t, MultiPathState{foreseen, -1, s_prev});
          target = dec.target;
          prices[target] = dec.price;
          break;
        }
        case PolicyKind::MyopicMaxCurrentAoi: {
          // Same normalized price level as the clustered computation, but
          // aimed at the path with the largest current (not foreseen) AoI.
          ApproxDecision dec = approx_price_online(p, t, MultiPathState{foreseen, -1, s_prev});
          target = select_target_path(actual);
          prices[target] = dec.price / p.delays[dec.target] * p.delays[target];
          break;
        }
        case PolicyKind::FixedPrice: {
          target = select_target_path(foreseen);
          prices[target] = std::min(cfg.fixed_price, static_cast<double>(p.delays[target]));
          break;
        }
        case PolicyKind::ZeroPrice:
          break;
        default:
          throw std::invalid_argument("policy not applicable to a multi-path problem");
      }
      if (target >= 0 && prices[target] <= 0.0) target = -1;
    }

    int arrival = step(p.chain, s_prev, uniform01(rng));
    double x = -1.0;
    int accepted = 0;
    int accepted_path = -1;
    double payment = 0.0;
    if (arrival) {
      x = p.dist.quantile(uniform01(rng));
      accepted_path = driver_choice(prices, p.delays, x);
      if (accepted_path >= 0) {
        accepted = 1;
        payment = prices[static_cast<std::size_t>(accepted_path)];
      }
    }
    double max_foreseen = *std::max_element(foreseen.begin(), foreseen.end());
    if (t < m)
      traj.discounted_cost += std::pow(p.rho, t) * (max_foreseen + payment);
    else if (t == m)
      traj.discounted_cost += std::pow(p.rho, t) * max_foreseen;
    traj.total_payment += payment;
    traj.n_samples += accepted;

    SlotRecord rec;
    rec.t = t;
    rec.arrival = arrival;
    rec.prices = prices;
    rec.target = target;
    rec.accepted = accepted;
    rec.accepted_path = accepted_path;
    rec.sensitivity = x;
    rec.payment = payment;
    rec.foreseen = foreseen;
    rec.actual = actual;
    traj.slots.push_back(std::move(rec));

    if (accepted) returns.emplace_back(t + p.delays[accepted_path], accepted_path);
    for (int i = 0; i < n; ++i)
      foreseen[i] = (i == accepted_path) ? p.delays[i] : foreseen[i] + 1;
    s_prev = arrival;
  }
  return traj;
}

namespace {

template <typename RunFn>
MonteCarloSummary aggregate(RunFn run, const RunConfig& cfg) {
  if (cfg.n_runs < 1) throw std::invalid_argument("monte_carlo: n_runs must be at least 1");
  double sum = 0.0, sum_sq = 0.0, pay = 0.0, samples = 0.0;
  for (int i = 0; i < cfg.n_runs; ++i) {
    RunConfig one = cfg;
    one.seed = cfg.seed + static_cast<std::uint64_t>(i);
    Trajectory traj = run(one);
    sum += traj.discounted_cost;
    sum_sq += traj.discounted_cost * traj.discounted_cost;
    pay += traj.total_payment;
    samples += traj.n_samples;
  }
  MonteCarloSummary s;
  s.policy = to_string(cfg.policy);
  s.n_runs = cfg.n_runs;
  s.seed = cfg.seed;
  s.mean_cost = sum / cfg.n_runs;
  s.mean_payment = pay / cfg.n_runs;
  s.mean_samples = samples / cfg.n_runs;
  if (cfg.n_runs > 1) {
    double var = std::max(0.0, (sum_sq - sum * sum / cfg.n_runs) / (cfg.n_runs - 1));
    s.std_error = std::sqrt(var / cfg.n_runs);
  }
  return s;
}

}  // namespace

MonteCarloSummary monte_carlo(const SinglePathProblem& p, int a0, const RunConfig& cfg) {
  return aggregate([&](const RunConfig& one) { return run_single_path(p, a0, one); }, cfg);
}

MonteCarloSummary monte_carlo(const MultiPathProblem& p, const std::vector<int>& a0,
                              const RunConfig& cfg) {
  return aggregate([&](const RunConfig& one) { return run_multi_path(p, a0, one); }, cfg);
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj,
                          const std::string& meta_comment) {
  // The foreseen series follows the decision-state recursion; the actual
  // series resets to D_i exactly D_i slots after an acceptance.
  if (!meta_comment.empty()) os << "# " << meta_comment << '\n';
  const std::size_t n = traj.slots.empty() ? 0 : traj.slots.front().prices.size();
  os << "t,arrival,target,accepted,accepted_path,sensitivity,payment";
  for (std::size_t i = 0; i < n; ++i) os << ",price_" << (i + 1);
  for (std::size_t i = 0; i < n; ++i) os << ",foreseen_aoi_" << (i + 1);
  for (std::size_t i = 0; i < n; ++i) os << ",actual_aoi_" << (i + 1);
  os << '\n';
  os << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (const SlotRecord& r : traj.slots) {
    os << r.t << ',' << r.arrival << ',' << (r.target + 1) << ',' << r.accepted << ','
       << (r.accepted_path + 1) << ',' << r.sensitivity << ',' << r.payment;
    for (double v : r.prices) os << ',' << v;
    for (double v : r.foreseen) os << ',' << v;
    for (double v : r.actual) os << ',' << v;
    os << '\n';
  }
}

}  // namespace aoip
