#include "aoip/cost_dist.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace aoip {

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double normal_pdf(double z) {
  static const double inv_sqrt_2pi = 0.3989422804014326779;
  return inv_sqrt_2pi * std::exp(-0.5 * z * z);
}

}  // namespace

std::string to_string(DistKind kind) {
  switch (kind) {
    case DistKind::Uniform: return "uniform";
    case DistKind::TruncatedNormal: return "truncated-normal";
    case DistKind::TruncatedLogistic: return "truncated-logistic";
    case DistKind::TruncatedExponential: return "truncated-exponential";
  }
  return "unknown";
}

CostDistribution::CostDistribution(DistKind kind, double p1, double p2)
    : kind_(kind), p1_(p1), p2_(p2) {
  lo_ = raw_cdf(0.0);
  mass_ = raw_cdf(1.0) - lo_;
  if (!(mass_ > 0.0)) throw std::invalid_argument("distribution has no mass on [0,1]");
}

CostDistribution CostDistribution::uniform() {
  return CostDistribution(DistKind::Uniform, 0.0, 0.0);
}

CostDistribution CostDistribution::truncated_normal(double mean, double variance) {
  if (!(variance > 0.0)) throw std::invalid_argument("truncated-normal: variance must be positive");
  return CostDistribution(DistKind::TruncatedNormal, mean, std::sqrt(variance));
}

CostDistribution CostDistribution::truncated_logistic(double location, double scale) {
  if (!(scale > 0.0)) throw std::invalid_argument("truncated-logistic: scale must be positive");
  return CostDistribution(DistKind::TruncatedLogistic, location, scale);
}

CostDistribution CostDistribution::truncated_exponential(double rate) {
  if (!(rate > 0.0)) throw std::invalid_argument("truncated-exponential: rate must be positive");
  return CostDistribution(DistKind::TruncatedExponential, rate, 0.0);
}

double CostDistribution::raw_cdf(double x) const {
  switch (kind_) {
    case DistKind::Uniform: return x;
    case DistKind::TruncatedNormal: return normal_cdf((x - p1_) / p2_);
    case DistKind::TruncatedLogistic: return 1.0 / (1.0 + std::exp(-(x - p1_) / p2_));
    case DistKind::TruncatedExponential: return 1.0 - std::exp(-p1_ * x);
  }
  return 0.0;
}

double CostDistribution::raw_pdf(double x) const {
  switch (kind_) {
    case DistKind::Uniform: return 1.0;
    case DistKind::TruncatedNormal: return normal_pdf((x - p1_) / p2_) / p2_;
    case DistKind::TruncatedLogistic: {
      double e = std::exp(-(x - p1_) / p2_);
      return e / (p2_ * (1.0 + e) * (1.0 + e));
    }
    case DistKind::TruncatedExponential: return p1_ * std::exp(-p1_ * x);
  }
  return 0.0;
}

double CostDistribution::cdf(double x) const {
  if (x < 0.0 || x > 1.0) throw std::domain_error("cdf: x outside [0,1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  return (raw_cdf(x) - lo_) / mass_;
}

double CostDistribution::pdf(double x) const {
  if (x < 0.0 || x > 1.0) throw std::domain_error("pdf: x outside [0,1]");
  return raw_pdf(x) / mass_;
}

double CostDistribution::hazard(double x) const {
  double f = pdf(x);
  if (!(f > 0.0)) throw std::runtime_error("hazard: density vanishes");
  return x + cdf(x) / f;
}

double CostDistribution::quantile(double u) const {
  if (u < 0.0 || u > 1.0) throw std::domain_error("quantile: u outside [0,1]");
  if (kind_ == DistKind::Uniform) return u;
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 80; ++i) {
    double mid = 0.5 * (lo + hi);
    if (cdf(mid) < u) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

RegularityReport check_regularity(const CostDistribution& d, double grid_step) {
  if (!(grid_step > 0.0 && grid_step <= 0.1))
    throw std::domain_error("check_regularity: grid_step outside (0, 0.1]");
  const int n = static_cast<int>(std::ceil(1.0 / grid_step));
  std::vector<double> h(n + 1);
  for (int i = 0; i <= n; ++i) {
    double x = std::min(1.0, i * grid_step);
    h[i] = d.hazard(x);
  }
  int last_violation = -1;
  for (int i = 0; i < n; ++i) {
    double slack = 1e-12 * std::max(1.0, std::abs(h[i]));
    if (h[i + 1] < h[i] - slack) last_violation = i;
  }
  RegularityReport r;
  r.grid_step = grid_step;
  if (last_violation < 0) {
    r.is_globally_regular = true;
    r.cutoff = 0.0;
  } else {
    r.is_globally_regular = false;
    r.cutoff = std::min(1.0, (last_violation + 1) * grid_step);
  }
  return r;
}

double invert_hazard(const CostDistribution& d, double c, double cutoff, double tol) {
  if (!(tol > 0.0)) throw std::domain_error("invert_hazard: tol must be positive");
  if (cutoff < 0.0 || cutoff >= 1.0) throw std::domain_error("invert_hazard: cutoff outside [0,1)");
  if (d.hazard(1.0) < c) return 1.0;  // saturation
  if (d.hazard(cutoff) > c) return cutoff;
  double lo = cutoff, hi = 1.0;
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    if (d.hazard(mid) < c) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace aoip
