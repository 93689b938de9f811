#include "spis/cgf.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "spis/special.hpp"

namespace spis {

double CumulantModel::marginal_density(double) const {
  throw std::logic_error(name() + ": marginal density not available");
}

double CumulantModel::cgf1(double theta) const {
  return cgf(Vec::Constant(1, theta));
}

double CumulantModel::grad1(double theta) const {
  return cgf_grad(Vec::Constant(1, theta))(0);
}

double CumulantModel::hess1(double theta) const {
  return cgf_hess(Vec::Constant(1, theta))(0, 0);
}

bool CumulantModel::in_domain1(double theta) const {
  return in_domain(Vec::Constant(1, theta));
}

void require_in_domain(const CumulantModel& model, const Vec& theta) {
  const int k = model.domain_violation(theta);
  if (k >= 0) {
    std::ostringstream os;
    os << model.name() << ": tilt parameter outside the CGF domain at coordinate " << k;
    throw std::domain_error(os.str());
  }
}

Vec tilted_sample(const CumulantModel& model, const Vec& theta, RngStream& rng) {
  require_in_domain(model, theta);
  return model.sample_tilted(theta, rng);
}

Complex phi_tilted(const CumulantModel& model, const Vec& theta, const Vec& u, const Vec& x0) {
  require_in_domain(model, theta);
  CVec z(theta.size());
  for (Eigen::Index i = 0; i < theta.size(); ++i) z(i) = Complex(theta(i), u(i));
  return std::exp(model.cgf_complex(z) - model.cgf(theta) - Complex(0.0, u.dot(x0)));
}

namespace {

class ExponentialModel final : public CumulantModel {
 public:
  explicit ExponentialModel(double rate) : rate_(rate) {
    if (rate <= 0.0) throw std::invalid_argument("exponential: rate must be positive");
  }

  int dim() const override { return 1; }
  std::string name() const override { return "exponential"; }

  bool in_domain(const Vec& theta) const override { return theta(0) < rate_; }
  int domain_violation(const Vec& theta) const override { return theta(0) < rate_ ? -1 : 0; }
  bool in_domain1(double theta) const override { return theta < rate_; }

  double cgf(const Vec& theta) const override { return cgf1(theta(0)); }
  double cgf1(double theta) const override { return -std::log1p(-theta / rate_); }

  Complex cgf_complex(const CVec& z) const override {
    // Re(1 - z/rate) > 0 on the domain, so the principal log is analytic
    return -std::log(1.0 - z(0) / rate_);
  }

  Vec cgf_grad(const Vec& theta) const override { return Vec::Constant(1, grad1(theta(0))); }
  double grad1(double theta) const override { return 1.0 / (rate_ - theta); }

  Mat cgf_hess(const Vec& theta) const override { return Mat::Constant(1, 1, hess1(theta(0))); }
  double hess1(double theta) const override {
    const double s = rate_ - theta;
    return 1.0 / (s * s);
  }

  Vec sample(RngStream& rng) const override { return Vec::Constant(1, rng.exponential(rate_)); }

  Vec sample_tilted(const Vec& theta, RngStream& rng) const override {
    return Vec::Constant(1, rng.exponential(rate_ - theta(0)));
  }

  bool has_marginal_density() const override { return true; }
  double marginal_density(double x) const override {
    return x < 0.0 ? 0.0 : rate_ * std::exp(-rate_ * x);
  }

  IntegrabilityConstants integrability() const override { return {2.0, 4.0}; }

 private:
  double rate_;
};

class GammaModel final : public CumulantModel {
 public:
  GammaModel(double shape, double scale) : shape_(shape), scale_(scale) {
    if (shape <= 0.0 || scale <= 0.0)
      throw std::invalid_argument("gamma: shape and scale must be positive");
  }

  int dim() const override { return 1; }
  std::string name() const override { return "gamma"; }

  bool in_domain(const Vec& theta) const override { return theta(0) < 1.0 / scale_; }
  int domain_violation(const Vec& theta) const override {
    return theta(0) < 1.0 / scale_ ? -1 : 0;
  }
  bool in_domain1(double theta) const override { return theta < 1.0 / scale_; }

  double cgf(const Vec& theta) const override { return cgf1(theta(0)); }
  double cgf1(double theta) const override { return -shape_ * std::log1p(-scale_ * theta); }

  Complex cgf_complex(const CVec& z) const override {
    return -shape_ * std::log(1.0 - scale_ * z(0));
  }

  Vec cgf_grad(const Vec& theta) const override { return Vec::Constant(1, grad1(theta(0))); }
  double grad1(double theta) const override {
    return shape_ * scale_ / (1.0 - scale_ * theta);
  }

  Mat cgf_hess(const Vec& theta) const override { return Mat::Constant(1, 1, hess1(theta(0))); }
  double hess1(double theta) const override {
    const double s = 1.0 - scale_ * theta;
    return shape_ * scale_ * scale_ / (s * s);
  }

  Vec sample(RngStream& rng) const override {
    return Vec::Constant(1, rng.gamma(shape_, scale_));
  }

  Vec sample_tilted(const Vec& theta, RngStream& rng) const override {
    return Vec::Constant(1, rng.gamma(shape_, scale_ / (1.0 - scale_ * theta(0))));
  }

  bool has_marginal_density() const override { return true; }
  double marginal_density(double x) const override { return gamma_pdf(x, shape_, scale_); }

  IntegrabilityConstants integrability() const override {
    // |phi(u)| ~ |u|^{-shape}; gamma = 2 is the documented default, alpha0
    // asserted from the power-law decay
    return {std::max(1.5, 2.0 * shape_ - 1.5), 2.0};
  }

 private:
  double shape_, scale_;
};

class NormalModel final : public CumulantModel {
 public:
  NormalModel(double mean, double variance) : mean_(mean), var_(variance) {
    if (variance <= 0.0) throw std::invalid_argument("normal: variance must be positive");
  }

  int dim() const override { return 1; }
  std::string name() const override { return "normal"; }

  bool in_domain(const Vec&) const override { return true; }
  int domain_violation(const Vec&) const override { return -1; }
  bool in_domain1(double) const override { return true; }

  double cgf(const Vec& theta) const override { return cgf1(theta(0)); }
  double cgf1(double theta) const override { return mean_ * theta + 0.5 * var_ * theta * theta; }

  Complex cgf_complex(const CVec& z) const override {
    return mean_ * z(0) + 0.5 * var_ * z(0) * z(0);
  }

  Vec cgf_grad(const Vec& theta) const override { return Vec::Constant(1, grad1(theta(0))); }
  double grad1(double theta) const override { return mean_ + var_ * theta; }

  Mat cgf_hess(const Vec&) const override { return Mat::Constant(1, 1, var_); }
  double hess1(double) const override { return var_; }

  Vec sample(RngStream& rng) const override {
    return Vec::Constant(1, mean_ + std::sqrt(var_) * rng.normal());
  }

  Vec sample_tilted(const Vec& theta, RngStream& rng) const override {
    return Vec::Constant(1, mean_ + var_ * theta(0) + std::sqrt(var_) * rng.normal());
  }

  bool has_marginal_density() const override { return true; }
  double marginal_density(double x) const override {
    const double z = (x - mean_);
    return std::exp(-0.5 * z * z / var_) / std::sqrt(2.0 * M_PI * var_);
  }

  IntegrabilityConstants integrability() const override { return {2.0, 1.0}; }

 private:
  double mean_, var_;
};

class IidProductModel final : public CumulantModel {
 public:
  explicit IidProductModel(std::vector<ModelPtr> comps) : comps_(std::move(comps)) {
    if (comps_.empty()) throw std::invalid_argument("iid product: empty component list");
    for (const auto& c : comps_)
      if (c->dim() != 1)
        throw std::invalid_argument("iid product: components must be one-dimensional");
  }

  int dim() const override { return static_cast<int>(comps_.size()); }
  std::string name() const override { return "iid_product"; }

  bool in_domain(const Vec& theta) const override { return domain_violation(theta) < 0; }
  int domain_violation(const Vec& theta) const override {
    for (int i = 0; i < dim(); ++i)
      if (!comps_[i]->in_domain1(theta(i))) return i;
    return -1;
  }

  double cgf(const Vec& theta) const override {
    double s = 0.0;
    for (int i = 0; i < dim(); ++i) s += comps_[i]->cgf1(theta(i));
    return s;
  }

  Complex cgf_complex(const CVec& z) const override {
    Complex s = 0.0;
    CVec zi(1);
    for (int i = 0; i < dim(); ++i) {
      zi(0) = z(i);
      s += comps_[i]->cgf_complex(zi);
    }
    return s;
  }

  Vec cgf_grad(const Vec& theta) const override {
    Vec g(dim());
    for (int i = 0; i < dim(); ++i) g(i) = comps_[i]->grad1(theta(i));
    return g;
  }

  Mat cgf_hess(const Vec& theta) const override {
    Mat h = Mat::Zero(dim(), dim());
    for (int i = 0; i < dim(); ++i) h(i, i) = comps_[i]->hess1(theta(i));
    return h;
  }

  Vec sample(RngStream& rng) const override {
    Vec x(dim());
    for (int i = 0; i < dim(); ++i) x(i) = comps_[i]->sample(rng)(0);
    return x;
  }

  Vec sample_tilted(const Vec& theta, RngStream& rng) const override {
    Vec x(dim());
    for (int i = 0; i < dim(); ++i)
      x(i) = comps_[i]->sample_tilted(Vec::Constant(1, theta(i)), rng)(0);
    return x;
  }

  IntegrabilityConstants integrability() const override {
    IntegrabilityConstants out{0.0, 0.0};
    for (const auto& c : comps_) {
      out.alpha0 = std::max(out.alpha0, c->integrability().alpha0);
      out.gamma = std::max(out.gamma, c->integrability().gamma);
    }
    return out;
  }

 private:
  std::vector<ModelPtr> comps_;
};

class LinearMapModel final : public CumulantModel {
 public:
  LinearMapModel(ModelPtr base, Mat b) : base_(std::move(base)), b_(std::move(b)) {
    if (b_.rows() != b_.cols() || b_.rows() != base_->dim())
      throw std::invalid_argument("linear map: B must be square matching the base dimension");
    if (std::fabs(b_.determinant()) < 1e-14)
      throw std::invalid_argument("linear map: B must be nonsingular");
    bt_ = b_.transpose();
    bt_c_ = bt_.cast<Complex>();
  }

  int dim() const override { return static_cast<int>(b_.rows()); }
  std::string name() const override { return "linear_map(" + base_->name() + ")"; }

  bool in_domain(const Vec& theta) const override { return base_->in_domain(bt_ * theta); }
  int domain_violation(const Vec& theta) const override {
    return base_->domain_violation(bt_ * theta);
  }

  double cgf(const Vec& theta) const override { return base_->cgf(bt_ * theta); }

  Complex cgf_complex(const CVec& z) const override { return base_->cgf_complex(bt_c_ * z); }

  Vec cgf_grad(const Vec& theta) const override { return b_ * base_->cgf_grad(bt_ * theta); }

  Mat cgf_hess(const Vec& theta) const override {
    return b_ * base_->cgf_hess(bt_ * theta) * bt_;
  }

  Vec sample(RngStream& rng) const override { return b_ * base_->sample(rng); }

  Vec sample_tilted(const Vec& theta, RngStream& rng) const override {
    return b_ * base_->sample_tilted(bt_ * theta, rng);
  }

  IntegrabilityConstants integrability() const override { return base_->integrability(); }

 private:
  ModelPtr base_;
  Mat b_, bt_;
  Eigen::MatrixXcd bt_c_;
};

}  // namespace

ModelPtr make_exponential(double rate) { return std::make_shared<ExponentialModel>(rate); }

ModelPtr make_gamma(double shape, double scale) {
  return std::make_shared<GammaModel>(shape, scale);
}

ModelPtr make_normal(double mean, double variance) {
  return std::make_shared<NormalModel>(mean, variance);
}

ModelPtr make_iid_product(std::vector<ModelPtr> components) {
  return std::make_shared<IidProductModel>(std::move(components));
}

ModelPtr make_linear_map(ModelPtr base, Mat b) {
  return std::make_shared<LinearMapModel>(std::move(base), std::move(b));
}

}  // namespace spis
