#pragma once

#include <optional>

#include "spis/cgf.hpp"

namespace spis {

struct TailSet;

/// Solved tilt point theta* with Lambda'(theta*) = x0 and the derived
/// quantities every estimator needs: the Hessian H, its inverse square root
/// A (symmetric, A H A = I), determinant and eigenvalue extremes.
struct SaddlePoint {
  Vec theta;
  Vec x0;
  double cgf_value = 0.0;  // Lambda(theta*)
  Mat hessian;             // H = Lambda''(theta*)
  Mat inv_sqrt;            // A = H^{-1/2}
  double det_hessian = 0.0;
  double kappa_min = 0.0;
  double kappa_max = 0.0;
  double residual_norm = 0.0;

  int dim() const { return static_cast<int>(theta.size()); }
  /// Large-deviations exponent theta* . x0 - Lambda(theta*).
  double rate() const { return theta.dot(x0) - cgf_value; }
};

/// Damped Newton iteration on Lambda'(theta) = x0 starting from init (default
/// the origin). Full steps are halved until the iterate stays inside the
/// domain interior and the residual norm decreases; fails below step 2^-30.
/// Converges to residual <= 1e-10 * (1 + |x0|) within 200 iterations or
/// throws std::runtime_error. A Hessian that is not strictly positive
/// definite at the solution throws ("degenerate saddle point").
SaddlePoint solve_saddle_point(const CumulantModel& model, const Vec& x0,
                               std::optional<Vec> init = std::nullopt);

/// Scalar Newton for d = 1: solves Lambda'(theta) = target.
/// Warm start supported; used per step by the sequential twisting baseline.
double solve_tilt_1d(const CumulantModel& model, double target, double init = 0.0);

/// Deterministic saddle-point prefactor of the density of the mean of n
/// draws at x0: (n/2pi)^{d/2} exp(n(Lambda - theta.x0)) / sqrt(det H).
double exact_asymptotic_density(const SaddlePoint& sp, long n);

/// Deterministic tail approximation
/// (1/2pi)^{d/2} c(n,theta*,x0) exp(-n(theta.x0 - Lambda)) / sqrt(det H).
double exact_asymptotic_tail(const SaddlePoint& sp, const TailSet& set, long n);

/// Deterministic approximation of E[(S_n - n x0)^+] for d = 1, theta* > 0:
/// (1/(2 pi n))^{1/2} exp(-n(theta x0 - Lambda)) / (theta*^2 sqrt(det H)).
/// Equals exact_asymptotic_tail of the half line divided by theta*.
double exact_asymptotic_overshoot(const SaddlePoint& sp, long n);

}  // namespace spis
