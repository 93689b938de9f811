#include "spis/tail_set.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace spis {

namespace {

// theta_i* = 0 detection scale for partial orthants
double zero_tol(const SaddlePoint& sp) { return 1e-8 * (1.0 + sp.theta.norm()); }

[[noreturn]] void fail_coordinate(const char* what, int i, bool suggest_decomposition) {
  std::ostringstream os;
  os << "dominating-point condition failed: " << what << " at coordinate " << i;
  if (suggest_decomposition)
    os << " (consider a partial orthant or a signed decomposition of the set)";
  throw std::domain_error(os.str());
}

}  // namespace

TailSet TailSet::full_orthant(Vec x0) {
  TailSet s;
  s.kind = Kind::full_orthant;
  s.x0 = std::move(x0);
  return s;
}

TailSet TailSet::partial_orthant(Vec x0, int d_prime) {
  if (d_prime < 0 || d_prime > x0.size())
    throw std::invalid_argument("partial orthant: d' must lie in [0, d]");
  TailSet s;
  s.kind = Kind::partial_orthant;
  s.x0 = std::move(x0);
  s.d_prime = d_prime;
  return s;
}

TailSet TailSet::affine_orthant(Vec x0, Mat b) {
  if (b.rows() != b.cols() || b.rows() != x0.size())
    throw std::invalid_argument("affine orthant: B must be square of the set dimension");
  if (std::fabs(b.determinant()) < 1e-14)
    throw std::invalid_argument("affine orthant: B must be nonsingular");
  TailSet s;
  s.kind = Kind::affine_orthant;
  s.x0 = std::move(x0);
  s.b = std::move(b);
  return s;
}

TailSet TailSet::rectangle(Vec x0, Vec widths) {
  if (widths.size() != x0.size() || (widths.array() <= 0.0).any())
    throw std::invalid_argument("rectangle: widths must be positive, one per coordinate");
  TailSet s;
  s.kind = Kind::rectangle;
  s.x0 = std::move(x0);
  s.widths = std::move(widths);
  return s;
}

TailSet TailSet::signed_combination(std::vector<std::pair<int, TailSet>> terms) {
  if (terms.empty()) throw std::invalid_argument("signed combination: no terms");
  for (const auto& [sign, term] : terms) {
    if (sign != 1 && sign != -1)
      throw std::invalid_argument("signed combination: signs must be +1 or -1");
    if (term.kind == Kind::signed_combination)
      throw std::invalid_argument("signed combination: terms must be simple sets");
  }
  TailSet s;
  s.kind = Kind::signed_combination;
  s.x0 = terms.front().second.x0;
  s.terms = std::move(terms);
  return s;
}

bool TailSet::contains(const Vec& x) const {
  switch (kind) {
    case Kind::full_orthant:
      return (x.array() >= x0.array()).all();
    case Kind::partial_orthant:
      return (x.head(d_prime).array() >= x0.head(d_prime).array()).all();
    case Kind::affine_orthant:
      return (b.partialPivLu().solve(x - x0).array() >= 0.0).all();
    case Kind::rectangle:
      return (x.array() >= x0.array()).all() &&
             (x.array() <= (x0 + widths).array()).all();
    case Kind::signed_combination:
      throw std::logic_error("signed combination has no single membership test");
  }
  return false;
}

void validate_dominating_point(const TailSet& set, const SaddlePoint& sp) {
  const Vec& theta = sp.theta;
  switch (set.kind) {
    case TailSet::Kind::full_orthant:
    case TailSet::Kind::rectangle:
      for (int i = 0; i < set.dim(); ++i)
        if (!(theta(i) > 0.0)) fail_coordinate("theta* must be positive", i, true);
      return;
    case TailSet::Kind::partial_orthant: {
      const double tol = zero_tol(sp);
      for (int i = 0; i < set.d_prime; ++i)
        if (!(theta(i) > 0.0)) fail_coordinate("theta* must be positive", i, true);
      for (int i = set.d_prime; i < set.dim(); ++i)
        if (std::fabs(theta(i)) > tol)
          fail_coordinate("theta* must vanish on the unconstrained block", i, false);
      return;
    }
    case TailSet::Kind::affine_orthant: {
      const Vec bt = set.b.transpose() * theta;
      for (int i = 0; i < set.dim(); ++i)
        if (!(bt(i) > 0.0)) fail_coordinate("B^T theta* must be positive", i, true);
      return;
    }
    case TailSet::Kind::signed_combination:
      throw std::logic_error("signed combination: validate each term separately");
  }
}

double c_constant(const TailSet& set, const SaddlePoint& sp, long n) {
  validate_dominating_point(set, sp);
  const Vec& theta = sp.theta;
  const double nd = static_cast<double>(n);
  switch (set.kind) {
    case TailSet::Kind::full_orthant:
      return std::pow(nd, -0.5 * set.dim()) / theta.prod();
    case TailSet::Kind::partial_orthant: {
      if (set.d_prime == 0) return 1.0;
      return std::pow(nd, -0.5 * set.d_prime) / theta.head(set.d_prime).prod();
    }
    case TailSet::Kind::affine_orthant: {
      const Vec bt = set.b.transpose() * theta;
      return std::fabs(set.b.determinant()) * std::pow(nd, -0.5 * set.dim()) / bt.prod();
    }
    case TailSet::Kind::rectangle: {
      double c = std::pow(nd, -0.5 * set.dim());
      for (int i = 0; i < set.dim(); ++i)
        c *= -std::expm1(-nd * theta(i) * set.widths(i)) / theta(i);
      return c;
    }
    case TailSet::Kind::signed_combination:
      throw std::logic_error("signed combination: estimate each term separately");
  }
  return 0.0;
}

Complex rho(const TailSet& set, const SaddlePoint& sp, long n, const Vec& t) {
  const Vec& theta = sp.theta;
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  switch (set.kind) {
    case TailSet::Kind::full_orthant: {
      Complex out = 1.0;
      for (int i = 0; i < set.dim(); ++i)
        out /= Complex(1.0, t(i) / (sqrt_n * theta(i)));
      return out;
    }
    case TailSet::Kind::partial_orthant: {
      Complex out = 1.0;
      for (int i = 0; i < set.d_prime; ++i)
        out /= Complex(1.0, t(i) / (sqrt_n * theta(i)));
      return out;
    }
    case TailSet::Kind::affine_orthant: {
      // change of variables y = B z maps the set to the full orthant with
      // tilt B^T theta* and frequency B^T t
      const Vec bt_theta = set.b.transpose() * theta;
      const Vec bt_t = set.b.transpose() * t;
      Complex out = 1.0;
      for (int i = 0; i < set.dim(); ++i)
        out /= Complex(1.0, bt_t(i) / (sqrt_n * bt_theta(i)));
      return out;
    }
    case TailSet::Kind::rectangle: {
      const double nd = static_cast<double>(n);
      Complex out = 1.0;
      for (int i = 0; i < set.dim(); ++i) {
        const Complex one_plus(1.0, t(i) / (sqrt_n * theta(i)));
        const double span = nd * theta(i) * set.widths(i);
        out *= (1.0 - std::exp(-span * one_plus)) / (one_plus * (-std::expm1(-span)));
      }
      return out;
    }
    case TailSet::Kind::signed_combination:
      throw std::logic_error("signed combination: estimate each term separately");
  }
  return {};
}

SetGeometry reduced_geometry(const TailSet& set, const SaddlePoint& sp) {
  SetGeometry g;
  if (set.kind != TailSet::Kind::partial_orthant) {
    g.d_eff = set.dim();
    g.transform = sp.inv_sqrt;
    g.det_eff = sp.det_hessian;
    return g;
  }
  const int dp = set.d_prime;
  if (dp < 1)
    throw std::invalid_argument(
        "partial orthant with d' = 0 covers the whole space (probability 1)");
  const Mat h_sub = sp.hessian.topLeftCorner(dp, dp);
  Eigen::SelfAdjointEigenSolver<Mat> eig(h_sub);
  if (eig.info() != Eigen::Success || eig.eigenvalues()(0) <= 0.0)
    throw std::runtime_error("partial orthant: marginal Hessian block not positive definite");
  g.d_eff = dp;
  g.transform = Mat::Zero(set.dim(), dp);
  g.transform.topRows(dp) = eig.eigenvectors() *
                            eig.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                            eig.eigenvectors().transpose();
  g.det_eff = eig.eigenvalues().prod();
  return g;
}

Complex rho_overshoot(double theta, long n, double t) {
  // conjugate characteristic function of the Gamma(2, 1/(sqrt(n) theta))
  // overshoot kernel: 1 / (1 + i t/(sqrt(n) theta))^2
  const double nd = static_cast<double>(n);
  return 1.0 / Complex(1.0 - t * t / (nd * theta * theta),
                       2.0 * t / (std::sqrt(nd) * theta));
}

}  // namespace spis
