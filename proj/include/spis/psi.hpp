#pragma once

#include "spis/cgf.hpp"
#include "spis/saddlepoint.hpp"

namespace spis {

/// Evaluation context for the normalized Fourier integrand
///
///   psi(y, theta*, n) = exp(n eta(y)),
///   eta(y) = (1/2) y^T H y + Lambda(theta* + i y) - i y . x0 - Lambda(theta*)
///
/// evaluated at y = n^{-1/2} A v. psi(0) = 1 exactly.
struct PsiContext {
  const CumulantModel* model = nullptr;
  SaddlePoint sp;
  long n = 1;
  Mat transform;  // d x d_eff map from integration variables to y, default A

  PsiContext(const CumulantModel& m, SaddlePoint saddle, long n_level)
      : model(&m), sp(std::move(saddle)), n(n_level) {
    transform = sp.inv_sqrt;
    sqrt_n = std::sqrt(static_cast<double>(n));
  }

  PsiContext(const CumulantModel& m, SaddlePoint saddle, long n_level, Mat map)
      : model(&m), sp(std::move(saddle)), n(n_level), transform(std::move(map)) {
    sqrt_n = std::sqrt(static_cast<double>(n));
  }

  double sqrt_n = 1.0;
};

/// n * eta(n^{-1/2} A v); the real part never exceeds |v|^2 / 2.
Complex log_psi(const PsiContext& ctx, const Vec& v);

/// exp(n eta). Throws std::overflow_error naming |v| if the real part of the
/// exponent exceeds 700 (never returns a silent infinity).
Complex psi(const PsiContext& ctx, const Vec& v);

/// Cross-validation path: exp(|v|^2/2) * phi_theta(n^{-1/2} A v)^n with the
/// n-th power taken as exp(n * (complex CGF difference)). Algebraically equal
/// to psi; assembled independently so roundoff paths differ.
Complex psi_via_phi(const PsiContext& ctx, const Vec& v);

/// log of psi(v) * standard-normal-density(v): n eta - |v|^2/2 - (d/2) ln 2pi.
/// Real part is <= 0, so exponentiating never overflows; all estimator
/// weights go through this fused form.
Complex log_psi_phi(const PsiContext& ctx, const Vec& v);

}  // namespace spis
