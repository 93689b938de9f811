#include "spis/is_density.hpp"

#include <cmath>
#include <stdexcept>

#include "spis/special.hpp"

namespace spis {

ISDensityParams ISDensityParams::create(int d, double alpha, double a, double p) {
  if (d < 1) throw std::invalid_argument("IS params: dimension must be >= 1");
  if (!(alpha > d))
    throw std::invalid_argument("IS params: tail not normalizable (alpha must exceed d)");
  if (!(a > 0.0)) throw std::invalid_argument("IS params: core radius must be positive");
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("IS params: p must lie in (0,1)");
  ISDensityParams out;
  out.d = d;
  out.alpha = alpha;
  out.a = a;
  out.p = p;
  const double ig = reg_lower_gamma(0.5 * d, 0.5 * a * a);
  out.b = p / ig;
  const double tail_integral = unit_sphere_area(d) * std::pow(a, d - alpha) / (alpha - d);
  out.c = (1.0 - p) / tail_integral;
  return out;
}

ISDensityParams ISDensityParams::with_schedule(long n, int d, double alpha, double a,
                                               double xi) {
  if (n < 1) throw std::invalid_argument("IS params: n must be >= 1");
  if (!(xi > 0.0)) throw std::invalid_argument("IS params: xi must be positive");
  const double b = 1.0 - std::pow(static_cast<double>(n), -xi);
  if (!(b > 0.0)) throw std::invalid_argument("IS params: schedule gives b <= 0 at this n");
  const double ig = reg_lower_gamma(0.5 * d, 0.5 * a * a);
  return create(d, alpha, a, b * ig);
}

ISDensityParams choose_parameters(long n, int d, const ISOverrides& overrides) {
  if (n < 1) throw std::invalid_argument("choose_parameters: n must be >= 1");
  double alpha = overrides.alpha.value_or(static_cast<double>(d) + 1.0);
  const double a = overrides.a.value_or(2.0);
  const double p = overrides.p.value_or(d == 1 ? 0.9 : 0.95);
  bool substituted = false;
  if (overrides.alpha && *overrides.alpha == static_cast<double>(d)) {
    // boundary exponent: the tail integral diverges; bump to the nearest
    // normalizable default and surface the substitution to the caller
    alpha = static_cast<double>(d) + 1.0;
    substituted = true;
  }
  ISDensityParams out = ISDensityParams::create(d, alpha, a, p);
  out.alpha_substituted = substituted;
  return out;
}

double is_log_pdf(const ISDensityParams& params, double v_norm) {
  if (v_norm < params.a)
    return std::log(params.b) - 0.5 * params.d * std::log(2.0 * M_PI) - 0.5 * v_norm * v_norm;
  return std::log(params.c) - params.alpha * std::log(v_norm);
}

double is_pdf(const ISDensityParams& params, const Vec& v) {
  if (v.size() != params.d) throw std::invalid_argument("is_pdf: dimension mismatch");
  return std::exp(is_log_pdf(params, v.norm()));
}

Vec is_sample(const ISDensityParams& params, RngStream& rng) {
  const int d = params.d;
  Vec v(d);
  if (rng.uniform() < params.p) {
    // normal core conditioned on |v| < a
    for (;;) {
      for (int i = 0; i < d; ++i) v(i) = rng.normal();
      if (v.norm() < params.a) return v;
    }
  }
  // power-law radius, uniform direction
  const double r = params.a * std::pow(rng.uniform(), -1.0 / (params.alpha - d));
  if (d == 1) {
    v(0) = rng.uniform() < 0.5 ? -r : r;
    return v;
  }
  double norm = 0.0;
  do {
    for (int i = 0; i < d; ++i) v(i) = rng.normal();
    norm = v.norm();
  } while (norm < 1e-12);
  return v * (r / norm);
}

}  // namespace spis
