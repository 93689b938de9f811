#include "spis/saddlepoint.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "spis/tail_set.hpp"

namespace spis {

namespace {

constexpr int kMaxIterations = 200;
constexpr double kMinStep = 0x1.0p-30;

}  // namespace

SaddlePoint solve_saddle_point(const CumulantModel& model, const Vec& x0,
                               std::optional<Vec> init) {
  const int d = model.dim();
  if (x0.size() != d) throw std::invalid_argument("solve_saddle_point: x0 dimension mismatch");

  Vec theta = init.value_or(Vec::Zero(d));
  if (!model.in_domain(theta))
    throw std::domain_error("solve_saddle_point: initial point outside the CGF domain");

  const double tol = 1e-10 * (1.0 + x0.norm());
  Vec residual = model.cgf_grad(theta) - x0;
  double res_norm = residual.norm();

  int it = 0;
  while (res_norm > tol) {
    if (++it > kMaxIterations) {
      std::ostringstream os;
      os << "solve_saddle_point: no convergence after " << kMaxIterations
         << " iterations (residual " << res_norm << ")";
      throw std::runtime_error(os.str());
    }
    const Mat h = model.cgf_hess(theta);
    const Vec step = h.ldlt().solve(residual);
    double t = 1.0;
    for (;;) {
      const Vec cand = theta - t * step;
      if (model.in_domain(cand)) {
        const Vec cand_res = model.cgf_grad(cand) - x0;
        if (cand_res.norm() < res_norm) {
          theta = cand;
          residual = cand_res;
          res_norm = residual.norm();
          break;
        }
      }
      t *= 0.5;
      if (t < kMinStep)
        throw std::runtime_error("solve_saddle_point: saddle point not found in domain");
    }
  }

  SaddlePoint sp;
  sp.theta = theta;
  sp.x0 = x0;
  sp.cgf_value = model.cgf(theta);
  sp.hessian = model.cgf_hess(theta);
  sp.residual_norm = res_norm;

  Eigen::SelfAdjointEigenSolver<Mat> eig(sp.hessian);
  if (eig.info() != Eigen::Success)
    throw std::runtime_error("solve_saddle_point: eigendecomposition failed");
  const Vec& ev = eig.eigenvalues();
  sp.kappa_min = ev(0);
  sp.kappa_max = ev(d - 1);
  if (!(sp.kappa_min > 1e-12 * sp.kappa_max) || !(sp.kappa_min > 0.0))
    throw std::runtime_error("solve_saddle_point: degenerate saddle point");
  sp.inv_sqrt = eig.eigenvectors() * ev.cwiseSqrt().cwiseInverse().asDiagonal() *
                eig.eigenvectors().transpose();
  sp.det_hessian = ev.prod();
  return sp;
}

double solve_tilt_1d(const CumulantModel& model, double target, double init) {
  if (model.dim() != 1) throw std::invalid_argument("solve_tilt_1d: model must be 1-d");
  double theta = init;
  if (!model.in_domain1(theta)) theta = 0.0;
  double res = model.grad1(theta) - target;
  const double tol = 1e-10 * (1.0 + std::fabs(target));
  int it = 0;
  while (std::fabs(res) > tol) {
    if (++it > kMaxIterations)
      throw std::runtime_error("solve_tilt_1d: no convergence");
    const double step = res / model.hess1(theta);
    double t = 1.0;
    for (;;) {
      const double cand = theta - t * step;
      if (model.in_domain1(cand)) {
        const double cand_res = model.grad1(cand) - target;
        if (std::fabs(cand_res) < std::fabs(res)) {
          theta = cand;
          res = cand_res;
          break;
        }
      }
      t *= 0.5;
      if (t < kMinStep) throw std::runtime_error("solve_tilt_1d: target outside range");
    }
  }
  return theta;
}

double exact_asymptotic_density(const SaddlePoint& sp, long n) {
  if (n < 1) throw std::invalid_argument("exact_asymptotic_density: n must be >= 1");
  const double d = sp.dim();
  return std::pow(n / (2.0 * M_PI), 0.5 * d) *
         std::exp(-static_cast<double>(n) * sp.rate()) / std::sqrt(sp.det_hessian);
}

double exact_asymptotic_tail(const SaddlePoint& sp, const TailSet& set, long n) {
  if (n < 1) throw std::invalid_argument("exact_asymptotic_tail: n must be >= 1");
  const SetGeometry geom = reduced_geometry(set, sp);
  return std::pow(2.0 * M_PI, -0.5 * geom.d_eff) * c_constant(set, sp, n) *
         std::exp(-static_cast<double>(n) * sp.rate()) / std::sqrt(geom.det_eff);
}

double exact_asymptotic_overshoot(const SaddlePoint& sp, long n) {
  if (sp.dim() != 1)
    throw std::invalid_argument("exact_asymptotic_overshoot: only d = 1 is supported");
  if (n < 1) throw std::invalid_argument("exact_asymptotic_overshoot: n must be >= 1");
  const double theta = sp.theta(0);
  if (theta <= 0.0)
    throw std::domain_error("exact_asymptotic_overshoot: not a tail event (theta* <= 0)");
  return std::sqrt(1.0 / (2.0 * M_PI * n)) *
         std::exp(-static_cast<double>(n) * sp.rate()) /
         (theta * theta * std::sqrt(sp.det_hessian));
}

}  // namespace spis
