#pragma once

#include <optional>

#include "spis/cgf.hpp"
#include "spis/rng.hpp"

namespace spis {

/// Mixture proposal density used by all saddle-point importance-sampling
/// estimators: a standard normal core on |v| < a carrying mass p, and an
/// isotropic power-law tail C |v|^{-alpha} on |v| >= a carrying mass 1 - p.
///
///   p = b * IG(d/2, a^2/2),   C = (1 - p) / (S_{d-1} a^{d-alpha} / (alpha - d))
///
/// where IG is the regularized lower incomplete gamma function and S_{d-1}
/// the unit-sphere area. The tail is normalizable iff alpha > d, which is
/// enforced at construction.
struct ISDensityParams {
  int d = 1;
  double alpha = 2.0;  // tail exponent, > d
  double a = 2.0;      // core radius
  double b = 0.0;      // core multiplier
  double p = 0.0;      // core mass
  double c = 0.0;      // tail constant
  bool alpha_substituted = false;  // set when an alpha == d override was bumped to d+1

  /// Validates and derives (b, C) from (d, alpha, a, p).
  static ISDensityParams create(int d, double alpha, double a, double p);

  /// Theoretical-schedule mode: b_n = 1 - n^{-xi}, p = b_n * IG(d/2, a^2/2).
  static ISDensityParams with_schedule(long n, int d, double alpha, double a, double xi = 1.0);
};

struct ISOverrides {
  std::optional<double> alpha;
  std::optional<double> a;
  std::optional<double> p;
};

/// Practical parameter guideline: alpha = d + 1, a = 2, p = 0.9 (d = 1) or
/// 0.95 (d >= 2); overrides win. An override with alpha == d (the
/// non-normalizable boundary) is substituted by alpha = d + 1 and flagged;
/// alpha < d is rejected.
ISDensityParams choose_parameters(long n, int d, const ISOverrides& overrides = {});

double is_pdf(const ISDensityParams& params, const Vec& v);
double is_log_pdf(const ISDensityParams& params, double v_norm);

/// One draw from the mixture; the core is sampled by rejection from the
/// unconditioned normal, the tail radius by inverse CDF with a uniform
/// direction.
Vec is_sample(const ISDensityParams& params, RngStream& rng);

}  // namespace spis
