#pragma once

#include <string>

namespace aoip {

enum class DistKind {
  Uniform,
  TruncatedNormal,
  TruncatedLogistic,
  TruncatedExponential,
};

std::string to_string(DistKind kind);

/// Driver cost-sensitivity distribution on [0,1]. All parametric kinds are
/// truncated to [0,1] and renormalized, so cdf(0) == 0 and cdf(1) == 1 exactly.
class CostDistribution {
 public:
  static CostDistribution uniform();
  static CostDistribution truncated_normal(double mean, double variance);
  static CostDistribution truncated_logistic(double location, double scale);
  static CostDistribution truncated_exponential(double rate);

  // F(x); throws std::domain_error for x outside [0,1].
  double cdf(double x) const;
  // F'(x); throws std::domain_error outside [0,1].
  double pdf(double x) const;
  // x + F(x)/F'(x); throws std::runtime_error where the density vanishes.
  double hazard(double x) const;
  // Inverse CDF, for drawing cost sensitivities from one uniform variate.
  double quantile(double u) const;

  DistKind kind() const { return kind_; }
  double param1() const { return p1_; }
  double param2() const { return p2_; }

 private:
  CostDistribution(DistKind kind, double p1, double p2);

  double raw_cdf(double x) const;
  double raw_pdf(double x) const;

  DistKind kind_;
  double p1_ = 0.0;
  double p2_ = 0.0;
  double lo_ = 0.0;    // untruncated CDF at 0
  double mass_ = 1.0;  // untruncated mass on [0,1]
};

struct RegularityReport {
  bool is_globally_regular = false;
  double cutoff = 0.0;  // smallest grid point after which the hazard is nondecreasing
  double grid_step = 0.0;
};

/// Scans the hazard function on a uniform grid and reports the cutoff after
/// which it is nondecreasing. grid_step must lie in (0, 0.1].
RegularityReport check_regularity(const CostDistribution& d, double grid_step = 1e-4);

/// Smallest y in [cutoff, 1] with hazard(y) == c, located by bisection to
/// absolute tolerance tol in y. Returns 1 when hazard(1) < c (saturation) and
/// cutoff when hazard(cutoff) > c. Requires the hazard to be nondecreasing on
/// [cutoff, 1] (see check_regularity).
double invert_hazard(const CostDistribution& d, double c, double cutoff, double tol);

}  // namespace aoip
