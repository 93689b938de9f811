#pragma once

#include <Eigen/Dense>
#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "spis/rng.hpp"

namespace spis {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using CVec = Eigen::VectorXcd;
using Complex = std::complex<double>;

/// User-asserted integrability constants: |u|^alpha0 |phi(u)|^gamma is
/// integrable. These are declared per family, not verified numerically.
struct IntegrabilityConstants {
  double alpha0 = 2.0;
  double gamma = 2.0;
};

/// A d-dimensional light-tailed distribution seen through its cumulant
/// generating function Lambda(theta) = ln E[exp(theta . X)], evaluated at
/// real and complex arguments, with gradient, Hessian and samplers for the
/// original and exponentially tilted laws.
///
/// Values are immutable after construction and safe to share across
/// threads; random streams are always owned by the caller.
class CumulantModel {
 public:
  virtual ~CumulantModel() = default;

  virtual int dim() const = 0;
  virtual std::string name() const = 0;

  /// True iff theta lies in the interior of the effective domain.
  virtual bool in_domain(const Vec& theta) const = 0;

  /// Index of the first coordinate responsible for a domain violation,
  /// or -1 when theta is admissible. Used to build error messages.
  virtual int domain_violation(const Vec& theta) const = 0;

  virtual double cgf(const Vec& theta) const = 0;

  /// Analytic continuation; requires Re(z) in the domain interior.
  /// Computed by principal-branch logarithms applied factor by factor,
  /// each factor argument having positive real part on the domain.
  virtual Complex cgf_complex(const CVec& z) const = 0;

  virtual Vec cgf_grad(const Vec& theta) const = 0;
  virtual Mat cgf_hess(const Vec& theta) const = 0;

  virtual Vec sample(RngStream& rng) const = 0;

  /// One draw from the exponentially tilted law dF_theta = e^{theta.x - Lambda} dF.
  /// Throws std::domain_error naming the offending coordinate if theta is
  /// outside the domain interior.
  virtual Vec sample_tilted(const Vec& theta, RngStream& rng) const = 0;

  /// Marginal density f(x) for one-dimensional models that expose it.
  virtual bool has_marginal_density() const { return false; }
  virtual double marginal_density(double /*x*/) const;

  virtual IntegrabilityConstants integrability() const { return {}; }

  // scalar fast paths for d == 1 (used by the sequential twisting baseline)
  virtual double cgf1(double theta) const;
  virtual double grad1(double theta) const;
  virtual double hess1(double theta) const;
  virtual bool in_domain1(double theta) const;
};

using ModelPtr = std::shared_ptr<const CumulantModel>;

ModelPtr make_exponential(double rate);
ModelPtr make_gamma(double shape, double scale);
ModelPtr make_normal(double mean, double variance);
ModelPtr make_iid_product(std::vector<ModelPtr> components);

/// X = B * E for a base model E and a square nonsingular matrix B, so that
/// Lambda_X(theta) = Lambda_E(B^T theta).
ModelPtr make_linear_map(ModelPtr base, Mat b);

/// One tilted draw with the domain check applied up front.
Vec tilted_sample(const CumulantModel& model, const Vec& theta, RngStream& rng);

/// Characteristic function of X - x0 under the tilted law F_theta:
/// exp(Lambda(theta + i u) - Lambda(theta) - i u . x0).
Complex phi_tilted(const CumulantModel& model, const Vec& theta, const Vec& u, const Vec& x0);

/// Throws std::domain_error naming the first offending coordinate.
void require_in_domain(const CumulantModel& model, const Vec& theta);

}  // namespace spis
