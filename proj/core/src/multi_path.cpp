#include "aoip/multi_path.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aoip {

MultiPathProblem MultiPathProblem::make(int horizon, std::vector<int> delays, double rho,
                                        ArrivalChain chain, CostDistribution dist, double eps) {
  if (delays.empty()) throw std::invalid_argument("delays must be nonempty");
  for (int d : delays)
    if (d < 1) throw std::invalid_argument("every delay must be a positive integer");
  int max_d = *std::max_element(delays.begin(), delays.end());
  if (horizon <= max_d) throw std::invalid_argument("max delay must be smaller than horizon");
  if (!(rho > 0.0 && rho < 1.0)) throw std::invalid_argument("rho must lie in (0,1)");
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  if (chain.alpha < 0.0 || chain.alpha > 1.0) throw std::invalid_argument("alpha outside [0,1]");
  if (chain.beta < 0.0 || chain.beta > 1.0) throw std::invalid_argument("beta outside [0,1]");
  RegularityReport reg = check_regularity(dist);
  return MultiPathProblem{horizon, std::move(delays), rho, chain, std::move(dist), eps,
                          reg.cutoff};
}

int MultiPathProblem::max_delay() const {
  return *std::max_element(delays.begin(), delays.end());
}

int select_target_path(const std::vector<double>& aoi) {
  if (aoi.empty()) throw std::invalid_argument("select_target_path: empty AoI vector");
  return static_cast<int>(std::max_element(aoi.begin(), aoi.end()) - aoi.begin());
}

int driver_choice(const std::vector<double>& prices, const std::vector<int>& delays, double x) {
  int best = -1;
  double best_u = 0.0;
  for (std::size_t i = 0; i < prices.size(); ++i) {
    double u = prices[i] - x * delays[i];
    if (u >= 0.0 && (best < 0 || u > best_u)) {
      best = static_cast<int>(i);
      best_u = u;
    }
  }
  return best;
}

std::vector<double> driver_choice_probs(const std::vector<double>& prices,
                                        const std::vector<int>& delays,
                                        const CostDistribution& dist) {
  const std::size_t n = prices.size();
  // Breakpoints where the argmax of p_i - x D_i (or its sign) can switch.
  std::vector<double> cuts{0.0, 1.0};
  for (std::size_t i = 0; i < n; ++i) {
    if (delays[i] > 0) cuts.push_back(prices[i] / delays[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      if (delays[i] != delays[j])
        cuts.push_back((prices[i] - prices[j]) / (delays[i] - delays[j]));
    }
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> q(n, 0.0);
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    double a = std::clamp(cuts[k], 0.0, 1.0);
    double b = std::clamp(cuts[k + 1], 0.0, 1.0);
    if (!(b > a)) continue;
    int choice = driver_choice(prices, delays, 0.5 * (a + b));
    if (choice >= 0) q[choice] += dist.cdf(b) - dist.cdf(a);
  }
  return q;
}

double immediate_cost_multi(const MultiPathProblem& p, const MultiPathState& st, int target,
                            double price) {
  if (target < 0 || target >= p.n_paths())
    throw std::domain_error("immediate_cost_multi: bad target");
  int d = p.delays[target];
  if (price < 0.0 || price > d) throw std::domain_error("immediate_cost_multi: price outside [0, D_i]");
  double max_aoi = *std::max_element(st.aoi.begin(), st.aoi.end());
  double e = expected_arrival(p.chain, st.s_prev);
  return max_aoi + e * p.dist.cdf(price / d) * price;
}

std::vector<double> clustered_aoi_update(std::vector<double> aoi, int target, int delay_target,
                                         int k, int j) {
  aoi.at(static_cast<std::size_t>(target)) = delay_target + 0.5 * (k - j);
  return aoi;
}

ApproxDecision approx_price_online(const MultiPathProblem& p, int t, const MultiPathState& st) {
  const int m = p.last_decision_slot();
  if (t < 0 || t > m) throw std::domain_error("approx_price_online: slot outside [0, T - max D]");
  if (static_cast<int>(st.aoi.size()) != p.n_paths())
    throw std::invalid_argument("approx_price_online: AoI size mismatch");
  const int lookahead = m - t;  // K
  const int target0 = select_target_path(st.aoi);
  if (lookahead == 0) {
    return ApproxDecision{target0, 0.0, st.aoi[target0], 1};
  }

  std::size_t vectors = 0;
  std::vector<double> next0, next1;  // layer k+1 costs, indexed by sampled count j
  for (int k = lookahead; k >= 1; --k) {
    std::vector<double> cur0(static_cast<std::size_t>(k) + 1);
    std::vector<double> cur1(static_cast<std::size_t>(k) + 1);
    // Un-sampled paths age linearly from the time-t values.
    std::vector<double> aoi = st.aoi;
    for (double& v : aoi) v += k;
    ++vectors;
    for (int j = 0; j <= k; ++j) {
      int target = select_target_path(aoi);
      double max_aoi = aoi[target];
      if (k == lookahead) {
        // Last decision slot: cost is the maximum foreseen AoI, price is zero.
        cur0[j] = cur1[j] = max_aoi;
      } else {
        int d = p.delays[target];
        double delta = std::max(0.0, next1[j] - next1[j + 1]);
        double price = d * invert_hazard(p.dist, p.rho * delta / d, p.cutoff, p.eps / d);
        double accept = p.dist.cdf(price / d);
        for (int s = 0; s <= 1; ++s) {
          double e = expected_arrival(p.chain, s);
          double cost = max_aoi + e * accept * price +
                        p.rho * ((1.0 - e) * next0[j] + e * (1.0 - accept) * next1[j] +
                                 e * accept * next1[j + 1]);
          (s == 0 ? cur0 : cur1)[j] = cost;
        }
      }
      aoi = clustered_aoi_update(std::move(aoi), target, p.delays[target], k, j);
      ++vectors;
    }
    next0 = std::move(cur0);
    next1 = std::move(cur1);
  }

  // Slot t itself: first-order condition between the unsampled and sampled
  // clustered continuations.
  vectors += 2;
  int d = p.delays[target0];
  double delta = std::max(0.0, next1[0] - next1[1]);
  double price = d * invert_hazard(p.dist, p.rho * delta / d, p.cutoff, p.eps / d);
  double accept = p.dist.cdf(price / d);
  double e = expected_arrival(p.chain, st.s_prev);
  double cost = st.aoi[target0] + e * accept * price +
                p.rho * ((1.0 - e) * next0[0] + e * (1.0 - accept) * next1[0] +
                         e * accept * next1[1]);
  return ApproxDecision{target0, price, cost, vectors};
}

double error_bound(const MultiPathProblem& p, int t, const std::function<int(int)>& g_of_n) {
  int g = g_of_n(p.n_paths());
  if (g < 0) throw std::invalid_argument("error_bound: g(N) must be nonnegative");
  double span = p.last_decision_slot() - t + 1;
  double one_minus = 1.0 - p.rho;
  return (std::pow(p.rho, g + 1) - std::pow(p.rho, span)) / (one_minus * one_minus);
}

}  // namespace aoip
