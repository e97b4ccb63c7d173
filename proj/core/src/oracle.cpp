#include "aoip/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace aoip {

namespace {

// Golden-section minimizer for a unimodal objective on [lo, hi].
template <typename F>
double golden_min(F f, double lo, double hi) {
  static const double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < 90 && b - a > 1e-13 * (hi - lo + 1.0); ++i) {
    if (f1 < f2) {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

SinglePathOracle::SinglePathOracle(SinglePathProblem p) : p_(std::move(p)) {
  if (p_.last_decision_slot() > 12)
    throw CapacityError("SinglePathOracle: T - D must not exceed 12");
}

PricedValue SinglePathOracle::solve(int t, int a_foreseen, int s_prev) {
  const int m = p_.last_decision_slot();
  if (t < 0 || t > m) throw std::domain_error("SinglePathOracle: slot out of range");
  if (t == m) return PricedValue{0.0, static_cast<double>(a_foreseen)};
  std::array<int, 3> key{t, a_foreseen, s_prev};
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;

  double next0 = solve(t + 1, a_foreseen + 1, 0).cost;
  double next1 = solve(t + 1, a_foreseen + 1, 1).cost;
  double next_sampled = solve(t + 1, p_.delay, 1).cost;
  double e = expected_arrival(p_.chain, s_prev);
  auto objective = [&](double price) {
    double accept = p_.dist.cdf(price / p_.delay);
    return a_foreseen + e * accept * price +
           p_.rho * ((1.0 - e) * next0 + e * (1.0 - accept) * next1 + e * accept * next_sampled);
  };
  double price = golden_min(objective, 0.0, p_.delay);
  PricedValue result{price, objective(price)};
  memo_.emplace(key, result);
  return result;
}

MultiPathOracle::MultiPathOracle(MultiPathProblem p) : p_(std::move(p)) {
  if (p_.last_decision_slot() > 12)
    throw CapacityError("MultiPathOracle: T - max D must not exceed 12");
  if (p_.n_paths() > 8) throw CapacityError("MultiPathOracle: N must not exceed 8");
}

MultiDecision MultiPathOracle::solve(int t, const std::vector<int>& aoi, int s_prev) {
  const int m = p_.last_decision_slot();
  if (t < 0 || t > m) throw std::domain_error("MultiPathOracle: slot out of range");
  std::vector<double> aoi_d(aoi.begin(), aoi.end());
  int target = select_target_path(aoi_d);
  if (t == m) return MultiDecision{target, 0.0, aoi_d[target]};

  std::vector<int> key;
  key.reserve(aoi.size() + 2);
  key.push_back(t);
  key.push_back(s_prev);
  key.insert(key.end(), aoi.begin(), aoi.end());
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;

  std::vector<int> aged(aoi);
  for (int& v : aged) ++v;
  std::vector<int> sampled(aged);
  sampled[static_cast<std::size_t>(target)] = p_.delays[target];

  double next0 = solve(t + 1, aged, 0).cost;
  double next1 = solve(t + 1, aged, 1).cost;
  double next_sampled = solve(t + 1, sampled, 1).cost;
  double e = expected_arrival(p_.chain, s_prev);
  double max_aoi = aoi_d[target];
  int d = p_.delays[target];
  auto objective = [&](double price) {
    double accept = p_.dist.cdf(price / d);
    return max_aoi + e * accept * price +
           p_.rho * ((1.0 - e) * next0 + e * (1.0 - accept) * next1 + e * accept * next_sampled);
  };
  double price = golden_min(objective, 0.0, d);
  MultiDecision result{target, price, objective(price)};
  memo_.emplace(std::move(key), result);
  return result;
}

double evaluate_approx_policy(const MultiPathProblem& p, int t, const std::vector<int>& aoi,
                              int s_prev) {
  if (p.last_decision_slot() > 12)
    throw CapacityError("evaluate_approx_policy: T - max D must not exceed 12");
  const int m = p.last_decision_slot();

  std::map<std::vector<int>, double> memo;
  std::map<std::vector<int>, ApproxDecision> decisions;  // price is s-independent

  std::function<double(int, const std::vector<int>&, int)> eval =
      [&](int slot, const std::vector<int>& a, int s) -> double {
    std::vector<double> a_d(a.begin(), a.end());
    if (slot == m) return *std::max_element(a_d.begin(), a_d.end());
    std::vector<int> key{slot};
    key.push_back(s);
    key.insert(key.end(), a.begin(), a.end());
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;

    std::vector<int> dkey{slot};
    dkey.insert(dkey.end(), a.begin(), a.end());
    auto dit = decisions.find(dkey);
    if (dit == decisions.end()) {
      MultiPathState st{a_d, -1, s};
      dit = decisions.emplace(dkey, approx_price_online(p, slot, st)).first;
    }
    const ApproxDecision& dec = dit->second;

    std::vector<int> aged(a);
    for (int& v : aged) ++v;
    std::vector<int> sampled(aged);
    sampled[static_cast<std::size_t>(dec.target)] = p.delays[dec.target];
    double e = expected_arrival(p.chain, s);
    double accept = p.dist.cdf(dec.price / p.delays[dec.target]);
    double max_aoi = a_d[select_target_path(a_d)];
    double cost = max_aoi + e * accept * dec.price +
                  p.rho * ((1.0 - e) * eval(slot + 1, aged, 0) +
                           e * (1.0 - accept) * eval(slot + 1, aged, 1) +
                           e * accept * eval(slot + 1, sampled, 1));
    memo.emplace(std::move(key), cost);
    return cost;
  };
  return eval(t, aoi, s_prev);
}

ExhaustiveTwoPathOracle::ExhaustiveTwoPathOracle(MultiPathProblem p, double grid_step)
    : p_(std::move(p)), step_(grid_step) {
  if (p_.n_paths() != 2) throw CapacityError("ExhaustiveTwoPathOracle: N must be 2");
  if (p_.last_decision_slot() > 5)
    throw CapacityError("ExhaustiveTwoPathOracle: T - max D must not exceed 5");
  if (!(grid_step >= 0.25)) throw CapacityError("ExhaustiveTwoPathOracle: grid_step below 0.25");
}

ExhaustiveTwoPathOracle::Node ExhaustiveTwoPathOracle::solve(int t, std::array<int, 2> aoi,
                                                             int s_prev) {
  const int m = p_.last_decision_slot();
  if (t < 0 || t > m) throw std::domain_error("ExhaustiveTwoPathOracle: slot out of range");
  double max_aoi = std::max(aoi[0], aoi[1]);
  if (t == m) return Node{{0.0, 0.0}, max_aoi, true};
  std::array<int, 4> key{t, aoi[0], aoi[1], s_prev};
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;

  double e = expected_arrival(p_.chain, s_prev);
  double aged0 = solve(t + 1, {aoi[0] + 1, aoi[1] + 1}, 0).cost;
  double aged1 = solve(t + 1, {aoi[0] + 1, aoi[1] + 1}, 1).cost;
  double reset_a = solve(t + 1, {p_.delays[0], aoi[1] + 1}, 1).cost;
  double reset_b = solve(t + 1, {aoi[0] + 1, p_.delays[1]}, 1).cost;

  auto cost_of = [&](double pa, double pb) {
    std::vector<double> q = driver_choice_probs({pa, pb}, p_.delays, p_.dist);
    return max_aoi + e * (q[0] * pa + q[1] * pb) +
           p_.rho * ((1.0 - e) * aged0 + e * (1.0 - q[0] - q[1]) * aged1 + e * q[0] * reset_a +
                     e * q[1] * reset_b);
  };

  const int na = static_cast<int>(std::floor(p_.delays[0] / step_ + 1e-9));
  const int nb = static_cast<int>(std::floor(p_.delays[1] / step_ + 1e-9));
  double best = std::numeric_limits<double>::infinity();
  std::array<double, 2> best_prices{0.0, 0.0};
  std::vector<std::pair<std::array<double, 2>, double>> grid;
  grid.reserve(static_cast<std::size_t>((na + 1) * (nb + 1)));
  for (int ia = 0; ia <= na; ++ia) {
    for (int ib = 0; ib <= nb; ++ib) {
      std::array<double, 2> prices{ia * step_, ib * step_};
      double c = cost_of(prices[0], prices[1]);
      grid.emplace_back(prices, c);
      if (c < best) {
        best = c;
        best_prices = prices;
      }
    }
  }
  int argmax = aoi[1] > aoi[0] ? 1 : 0;  // ties to the lowest index
  bool structured = false;
  for (const auto& [prices, c] : grid) {
    if (c > best + 1e-9 * (1.0 + std::abs(best))) continue;
    int positive = (prices[0] > 0.0) + (prices[1] > 0.0);
    if (positive == 0 || (positive == 1 && prices[argmax] > 0.0)) {
      structured = true;
      break;
    }
  }
  Node node{best_prices, best, structured};
  memo_.emplace(key, node);
  ++stats_.nodes;
  if (structured) ++stats_.structured_nodes;
  return node;
}

}  // namespace aoip
