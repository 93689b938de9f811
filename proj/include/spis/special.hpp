#pragma once

#include <type_traits>

namespace spis {

/// ln Gamma(x) for x > 0 (Lanczos approximation, ~1e-15 relative).
double log_gamma(double x);

/// Regularized lower incomplete gamma P(a,x) = (1/Gamma(a)) int_0^x e^-t t^{a-1} dt.
/// Series for x < a+1, continued fraction otherwise; converges to ~1e-14.
double reg_lower_gamma(double a, double x);

/// Regularized upper incomplete gamma Q(a,x) = 1 - P(a,x), computed directly
/// so tiny tail values keep full relative precision.
double reg_upper_gamma(double a, double x);

/// Gamma(shape, scale) density at x.
double gamma_pdf(double x, double shape, double scale);

/// Standard normal CDF.
double normal_cdf(double x);

/// Surface area of the unit sphere S^{d-1} in R^d (2 for d=1).
double unit_sphere_area(int d);

/// Adaptive Simpson quadrature of f on [lo,hi] to absolute tolerance tol.
double adaptive_simpson(double (*)(double, void*), void* ctx, double lo, double hi,
                        double tol, int max_depth = 40);

template <typename F>
double integrate(F&& f, double lo, double hi, double tol, int max_depth = 40) {
  using Fn = std::remove_reference_t<F>;
  auto thunk = [](double x, void* ctx) -> double { return (*static_cast<Fn*>(ctx))(x); };
  return adaptive_simpson(thunk, &f, lo, hi, tol, max_depth);
}

}  // namespace spis
