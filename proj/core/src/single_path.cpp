#include "aoip/single_path.hpp"

#include <algorithm>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace aoip {

SinglePathProblem SinglePathProblem::make(int horizon, int delay, double rho, ArrivalChain chain,
                                          CostDistribution dist, double eps) {
  if (delay < 1) throw std::invalid_argument("delay must be a positive integer");
  if (horizon <= delay) throw std::invalid_argument("delay must be smaller than horizon");
  if (!(rho > 0.0 && rho < 1.0)) throw std::invalid_argument("rho must lie in (0,1)");
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  if (chain.alpha < 0.0 || chain.alpha > 1.0) throw std::invalid_argument("alpha outside [0,1]");
  if (chain.beta < 0.0 || chain.beta > 1.0) throw std::invalid_argument("beta outside [0,1]");
  RegularityReport reg = check_regularity(dist);
  return SinglePathProblem{horizon, delay, rho, chain, std::move(dist), eps, reg.cutoff};
}

TransitionTriple transition_probs(const SinglePathProblem& p, const SinglePathState& st,
                                  double price) {
  if (price < 0.0 || price > p.delay) throw std::domain_error("price outside [0, D]");
  double e = expected_arrival(p.chain, st.s_prev);
  double accept = p.dist.cdf(price / p.delay);
  return TransitionTriple{e * accept, 1.0 - e, e * (1.0 - accept)};
}

double immediate_cost(const SinglePathProblem& p, const SinglePathState& st, double price) {
  return st.a_foreseen + transition_probs(p, st, price).q_sample * price;
}

double terminal_cost(const SinglePathState& st) { return st.a_foreseen; }

double solve_price(const SinglePathProblem& p, double delta_c) {
  if (delta_c < 0.0) delta_c = 0.0;  // numerical guard; the gap is nonnegative at optimality
  double target = p.rho * delta_c / p.delay;
  double y = invert_hazard(p.dist, target, p.cutoff, p.eps / p.delay);
  return p.delay * y;
}

namespace {

// One Bellman evaluation: cost at AoI `a` with arrival bit `s`, given the
// three continuation costs (same-trajectory s=0/s=1 and the table entry for
// the just-sampled state).
inline double bellman(const SinglePathProblem& p, double a, int s, double price, double accept,
                      double next0, double next1, double next_sampled) {
  double e = expected_arrival(p.chain, s);
  return a + e * accept * price +
         p.rho * ((1.0 - e) * next0 + e * (1.0 - accept) * next1 + e * accept * next_sampled);
}

}  // namespace

LookupTable build_lookup_table(const SinglePathProblem& p) {
  const int m = p.last_decision_slot();
  std::vector<double> c_bar(static_cast<std::size_t>(m) + 1);
  c_bar[m] = p.delay;
  for (int i = 1; i <= m; ++i) {
    // Chain of non-sampled-branch costs from slot T-D (AoI D+i) down to T-D-i (AoI D).
    double cost0 = p.delay + i;
    double cost1 = p.delay + i;
    for (int j = 1; j <= i; ++j) {
      const int slot = m - j;
      const int aoi = p.delay + i - j;
      double delta = std::max(0.0, cost1 - c_bar[slot + 1]);
      double price = solve_price(p, delta);
      double accept = p.dist.cdf(price / p.delay);
      double n0 = bellman(p, aoi, 0, price, accept, cost0, cost1, c_bar[slot + 1]);
      double n1 = bellman(p, aoi, 1, price, accept, cost0, cost1, c_bar[slot + 1]);
      cost0 = n0;
      cost1 = n1;
    }
    c_bar[m - i] = cost1;  // state (D, 1) at slot m - i
  }
  return LookupTable(std::move(c_bar));
}

OnlinePriceResult optimal_price_online(const SinglePathProblem& p, int t, int a_foreseen,
                                       int s_prev, const LookupTable& table) {
  const int m = p.last_decision_slot();
  if (t < 0) throw std::domain_error("optimal_price_online: negative slot");
  if (a_foreseen < 1) throw std::domain_error("optimal_price_online: AoI must be positive");
  if (table.size() != m + 1) throw std::invalid_argument("lookup table does not match problem");
  (void)s_prev;  // the first-order condition does not depend on the arrival bit
  if (t > m) return OnlinePriceResult{0.0, false};
  if (t == m) return OnlinePriceResult{0.0, true};
  double cost0 = a_foreseen + (m - t);  // terminal cost at slot m, AoI a + (m - t)
  double cost1 = cost0;
  for (int slot = m - 1; slot >= t; --slot) {
    const int aoi = a_foreseen + (slot - t);
    double delta = std::max(0.0, cost1 - table.at(slot + 1));
    double price = solve_price(p, delta);
    if (slot == t) return OnlinePriceResult{price, true};
    double accept = p.dist.cdf(price / p.delay);
    double n0 = bellman(p, aoi, 0, price, accept, cost0, cost1, table.at(slot + 1));
    double n1 = bellman(p, aoi, 1, price, accept, cost0, cost1, table.at(slot + 1));
    cost0 = n0;
    cost1 = n1;
  }
  return OnlinePriceResult{0.0, true};  // unreachable
}

double receding_horizon_price(const SinglePathProblem& p, int window, int t, int a_foreseen,
                              int s_prev) {
  if (window <= p.delay) throw std::domain_error("receding_horizon_price: window must exceed D");
  if (t < 0) throw std::domain_error("receding_horizon_price: negative slot");
  SinglePathProblem truncated = p;
  truncated.horizon = t + window;
  LookupTable table = build_lookup_table(truncated);
  return optimal_price_online(truncated, t, a_foreseen, s_prev, table).price;
}

void LookupTable::write_csv(std::ostream& os) const {
  os << "t,c_bar\n";
  os << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (std::size_t t = 0; t < c_bar_.size(); ++t) os << t << ',' << c_bar_[t] << '\n';
}

LookupTable LookupTable::read_csv(std::istream& is) {
  std::string line;
  std::vector<double> values;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 't') continue;
    std::istringstream row(line);
    std::string t_field, v_field;
    if (!std::getline(row, t_field, ',') || !std::getline(row, v_field)) continue;
    values.push_back(std::stod(v_field));
  }
  return LookupTable(std::move(values));
}

}  // namespace aoip
