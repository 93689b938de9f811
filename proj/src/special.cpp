#include "spis/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace spis {

double log_gamma(double x) {
  if (x <= 0.0) throw std::domain_error("log_gamma: argument must be positive");
  static const double cof[14] = {
      57.1562356658629235,     -59.5979603554754912,    14.1360979747417471,
      -0.491913816097620199,   0.339946499848118887e-4, 0.465236289270485756e-4,
      -0.983744753048795646e-4, 0.158088703224912494e-3, -0.210264441724104883e-3,
      0.217439618115212643e-3, -0.164318106536763890e-3, 0.844182239838527433e-4,
      -0.261908384015814087e-4, 0.368991826595316234e-5};
  double y = x;
  double tmp = x + 5.24218750000000000;
  tmp = (x + 0.5) * std::log(tmp) - tmp;
  double ser = 0.999999999999997092;
  for (double c : cof) ser += c / ++y;
  return tmp + std::log(2.5066282746310005 * ser / x);
}

namespace {

// series expansion of P(a,x), valid and fast for x < a+1
double gamma_p_series(double a, double x) {
  const double eps = std::numeric_limits<double>::epsilon();
  double ap = a;
  double del = 1.0 / a;
  double sum = del;
  for (int i = 0; i < 10000; ++i) {
    ++ap;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * eps)
      return sum * std::exp(-x + a * std::log(x) - log_gamma(a));
  }
  throw std::runtime_error("reg_lower_gamma: series did not converge");
}

// Lentz continued fraction for Q(a,x), valid for x >= a+1
double gamma_q_cf(double a, double x) {
  const double eps = std::numeric_limits<double>::epsilon();
  const double fpmin = std::numeric_limits<double>::min() / eps;
  double b = x + 1.0 - a;
  double c = 1.0 / fpmin;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -static_cast<double>(i) * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = b + an / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) <= eps)
      return std::exp(-x + a * std::log(x) - log_gamma(a)) * h;
  }
  throw std::runtime_error("reg_upper_gamma: continued fraction did not converge");
}

}  // namespace

double reg_lower_gamma(double a, double x) {
  if (a <= 0.0 || x < 0.0) throw std::domain_error("reg_lower_gamma: bad arguments");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_cf(a, x);
}

double reg_upper_gamma(double a, double x) {
  if (a <= 0.0 || x < 0.0) throw std::domain_error("reg_upper_gamma: bad arguments");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

double gamma_pdf(double x, double shape, double scale) {
  if (x < 0.0) return 0.0;
  if (x == 0.0) return shape < 1.0 ? std::numeric_limits<double>::infinity()
              : shape == 1.0       ? 1.0 / scale
                                   : 0.0;
  return std::exp((shape - 1.0) * std::log(x / scale) - x / scale - log_gamma(shape)) / scale;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x * M_SQRT1_2); }

double unit_sphere_area(int d) {
  return 2.0 * std::pow(M_PI, 0.5 * d) / std::exp(log_gamma(0.5 * d));
}

namespace {

double simpson_step(double (*f)(double, void*), void* ctx, double lo, double hi,
                    double flo, double fmid, double fhi, double whole, double tol,
                    int depth) {
  const double mid = 0.5 * (lo + hi);
  const double lmid = 0.5 * (lo + mid);
  const double rmid = 0.5 * (mid + hi);
  const double flm = f(lmid, ctx);
  const double frm = f(rmid, ctx);
  const double left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
  const double right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
  if (depth <= 0) return left + right;
  if (std::fabs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return simpson_step(f, ctx, lo, mid, flo, flm, fmid, left, 0.5 * tol, depth - 1) +
         simpson_step(f, ctx, mid, hi, fmid, frm, fhi, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(double (*f)(double, void*), void* ctx, double lo, double hi,
                        double tol, int max_depth) {
  const double flo = f(lo, ctx);
  const double fhi = f(hi, ctx);
  const double fmid = f(0.5 * (lo + hi), ctx);
  const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
  return simpson_step(f, ctx, lo, hi, flo, fmid, fhi, whole, tol, max_depth);
}

}  // namespace spis
