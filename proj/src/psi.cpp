#include "spis/psi.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace spis {

Complex log_psi(const PsiContext& ctx, const Vec& v) {
  const SaddlePoint& sp = ctx.sp;
  const Vec y = (ctx.transform * v) / ctx.sqrt_n;
  CVec z(y.size());
  for (Eigen::Index i = 0; i < y.size(); ++i) z(i) = Complex(sp.theta(i), y(i));
  const Complex eta = Complex(0.5 * y.dot(sp.hessian * y), 0.0) +
                      ctx.model->cgf_complex(z) - sp.cgf_value -
                      Complex(0.0, y.dot(sp.x0));
  return static_cast<double>(ctx.n) * eta;
}

Complex psi(const PsiContext& ctx, const Vec& v) {
  const Complex e = log_psi(ctx, v);
  if (e.real() > 700.0) {
    std::ostringstream os;
    os << "psi: exponent overflow at |v| = " << v.norm();
    throw std::overflow_error(os.str());
  }
  return std::exp(e);
}

Complex psi_via_phi(const PsiContext& ctx, const Vec& v) {
  const SaddlePoint& sp = ctx.sp;
  const Vec u = (ctx.transform * v) / ctx.sqrt_n;
  CVec z(u.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) z(i) = Complex(sp.theta(i), u(i));
  // log phi_theta(u) with the n-th power taken in the exponent
  const Complex log_phi =
      ctx.model->cgf_complex(z) - sp.cgf_value - Complex(0.0, u.dot(sp.x0));
  const Complex e = Complex(0.5 * v.squaredNorm(), 0.0) +
                    static_cast<double>(ctx.n) * log_phi;
  if (e.real() > 700.0) {
    std::ostringstream os;
    os << "psi: exponent overflow at |v| = " << v.norm();
    throw std::overflow_error(os.str());
  }
  return std::exp(e);
}

Complex log_psi_phi(const PsiContext& ctx, const Vec& v) {
  const double d = static_cast<double>(v.size());
  return log_psi(ctx, v) -
         Complex(0.5 * v.squaredNorm() + 0.5 * d * std::log(2.0 * M_PI), 0.0);
}

}  // namespace spis
