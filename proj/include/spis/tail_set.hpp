#pragma once

#include <utility>
#include <vector>

#include "spis/cgf.hpp"
#include "spis/saddlepoint.hpp"

namespace spis {

/// Descriptor of an admissible target set: an orthant-like region with a
/// known dominating point, a closed-form surface constant c(n,theta*,x0)
/// and conjugate characteristic function rho_n(t).
///
/// A signed combination is a harness-level recipe: each term carries its own
/// dominating point and is estimated separately; c_constant and rho reject it.
struct TailSet {
  enum class Kind {
    full_orthant,     // { x : x_i >= x0_i for all i }
    partial_orthant,  // { x : x_i >= x0_i for i < d' }
    affine_orthant,   // x0 + B R_+^d, B nonsingular
    rectangle,        // prod_i [x0_i, x0_i + D_i]
    signed_combination
  };

  Kind kind = Kind::full_orthant;
  Vec x0;
  int d_prime = 0;  // partial orthant only
  Mat b;            // affine orthant only
  Vec widths;       // rectangle only
  std::vector<std::pair<int, TailSet>> terms;  // signed combination only

  static TailSet full_orthant(Vec x0);
  static TailSet partial_orthant(Vec x0, int d_prime);
  static TailSet affine_orthant(Vec x0, Mat b);
  static TailSet rectangle(Vec x0, Vec widths);
  static TailSet signed_combination(std::vector<std::pair<int, TailSet>> terms);

  int dim() const { return static_cast<int>(x0.size()); }

  /// Dimension the estimator integrates over: d' for a partial orthant
  /// (the free coordinates are marginalized out), d otherwise.
  int effective_dim() const {
    return kind == Kind::partial_orthant ? d_prime : dim();
  }

  /// Set membership, used by the naive Monte Carlo baseline.
  bool contains(const Vec& x) const;
};

/// Geometry of the (possibly dimension-reduced) Fourier representation of a
/// set: the d x d_eff map taking integration variables v to CGF arguments
/// y = transform * v / sqrt(n), and the determinant entering the prefactor.
/// For a partial orthant these come from the d' x d' leading block of the
/// Hessian (the marginal law of the constrained coordinates); otherwise they
/// are the full-dimensional A and det H.
struct SetGeometry {
  int d_eff = 0;
  Mat transform;   // d x d_eff, transform^T H transform = I
  double det_eff = 1.0;
};

SetGeometry reduced_geometry(const TailSet& set, const SaddlePoint& sp);

/// Checks the dominating-point conditions of the variant against theta*;
/// throws std::domain_error naming the first offending coordinate and, for a
/// vanishing orthant coordinate, pointing at the partial-orthant /
/// signed-decomposition escape hatches.
void validate_dominating_point(const TailSet& set, const SaddlePoint& sp);

/// Closed-form c(n,theta*,x0) = n^{d/2} int_{A - x0} exp(-n theta*.w) dw.
double c_constant(const TailSet& set, const SaddlePoint& sp, long n);

/// Conjugate characteristic function rho_n(t) of the normalized surface
/// density on sqrt(n)(A - x0); rho(0) = 1 and |rho| <= 1.
Complex rho(const TailSet& set, const SaddlePoint& sp, long n, const Vec& t);

/// Conjugate characteristic function for the overshoot integrand
/// y exp(-sqrt(n) theta y) on y > 0 (d = 1):
/// 1 / (1 - t^2/(n theta^2) - 2 i t / (sqrt(n) theta)).
Complex rho_overshoot(double theta, long n, double t);

}  // namespace spis
