#include <doctest.h>

#include <cmath>
#include <complex>

#include "spis/special.hpp"
#include "spis/tail_set.hpp"

using namespace spis;

namespace {

SaddlePoint exp_saddle(double x0) {
  return solve_saddle_point(*make_exponential(1.0), Vec::Constant(1, x0));
}

Vec vec2(double a, double b) {
  Vec v(2);
  v << a, b;
  return v;
}

// conjugate characteristic function of the normalized surface kernel by
// direct numeric integration over the set (d = 1)
Complex fourier_oracle_1d(const TailSet& set, const SaddlePoint& sp, long n, double t) {
  const double theta = sp.theta(0);
  const double sn = std::sqrt(static_cast<double>(n));
  const double upper = set.kind == TailSet::Kind::rectangle ? sn * set.widths(0) : 50.0 / (sn * theta);
  const double norm = integrate([&](double y) { return std::exp(-sn * theta * y); }, 0.0, upper,
                                1e-12);
  const double re = integrate(
      [&](double y) { return std::cos(t * y) * std::exp(-sn * theta * y); }, 0.0, upper, 1e-12);
  const double im = integrate(
      [&](double y) { return -std::sin(t * y) * std::exp(-sn * theta * y); }, 0.0, upper, 1e-12);
  return Complex(re / norm, im / norm);
}

}  // namespace

TEST_CASE("membership tests per variant") {
  const TailSet full = TailSet::full_orthant(vec2(1.0, 2.0));
  CHECK(full.contains(vec2(1.0, 2.5)));
  CHECK_FALSE(full.contains(vec2(0.9, 2.5)));

  const TailSet part = TailSet::partial_orthant(vec2(1.0, 0.0), 1);
  CHECK(part.contains(vec2(1.2, -5.0)));
  CHECK_FALSE(part.contains(vec2(0.8, 5.0)));
  CHECK(part.effective_dim() == 1);

  Mat refl(2, 2);
  refl << 1.0, 0.0, 0.0, -1.0;
  const TailSet aff = TailSet::affine_orthant(vec2(1.0, 0.5), refl);
  CHECK(aff.contains(vec2(1.5, 0.2)));
  CHECK_FALSE(aff.contains(vec2(1.5, 0.7)));

  const TailSet rect = TailSet::rectangle(vec2(0.0, 0.0), vec2(1.0, 1.0));
  CHECK(rect.contains(vec2(0.5, 0.9)));
  CHECK_FALSE(rect.contains(vec2(0.5, 1.1)));

  const TailSet trivial = TailSet::partial_orthant(vec2(0.0, 0.0), 0);
  CHECK(trivial.contains(vec2(-100.0, 100.0)));
}

TEST_CASE("factory validation") {
  CHECK_THROWS_AS(TailSet::partial_orthant(vec2(0, 0), 3), std::invalid_argument);
  CHECK_THROWS_AS(TailSet::rectangle(vec2(0, 0), vec2(1.0, -1.0)), std::invalid_argument);
  CHECK_THROWS_AS(TailSet::affine_orthant(vec2(0, 0), Mat::Zero(2, 2)), std::invalid_argument);
  CHECK_THROWS_AS(TailSet::signed_combination({}), std::invalid_argument);
  CHECK_THROWS_AS(TailSet::signed_combination({{2, TailSet::full_orthant(vec2(0, 0))}}),
                  std::invalid_argument);
}

TEST_CASE("surface constant: closed forms") {
  const SaddlePoint sp = exp_saddle(1.5);  // theta* = 1/3
  const TailSet half_line = TailSet::full_orthant(Vec::Constant(1, 1.5));
  CHECK(c_constant(half_line, sp, 50) == doctest::Approx(0.424264).epsilon(1e-5));

  // a rectangle with huge width reduces to the half line
  const TailSet wide = TailSet::rectangle(Vec::Constant(1, 1.5), Vec::Constant(1, 1e3));
  CHECK(c_constant(wide, sp, 50) == doctest::Approx(c_constant(half_line, sp, 50)).epsilon(1e-13));

  // a finite rectangle carves off the exponential mass beyond the width
  const TailSet narrow = TailSet::rectangle(Vec::Constant(1, 1.5), Vec::Constant(1, 0.1));
  const double expect = -std::expm1(-50.0 * sp.theta(0) * 0.1) * c_constant(half_line, sp, 50);
  CHECK(c_constant(narrow, sp, 50) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("rho: unit value at zero, conjugate symmetry, closed form") {
  const SaddlePoint sp = exp_saddle(1.5);
  const TailSet half_line = TailSet::full_orthant(Vec::Constant(1, 1.5));
  const TailSet rect = TailSet::rectangle(Vec::Constant(1, 1.5), Vec::Constant(1, 0.5));

  for (const TailSet* set : {&half_line, &rect}) {
    const Complex at0 = rho(*set, sp, 50, Vec::Zero(1));
    CHECK(std::abs(at0 - 1.0) <= 1e-14);
    for (double t : {0.3, 1.0, 2.5}) {
      const Complex plus = rho(*set, sp, 50, Vec::Constant(1, t));
      const Complex minus = rho(*set, sp, 50, Vec::Constant(1, -t));
      CHECK(std::abs(minus - std::conj(plus)) <= 1e-14);
      CHECK(std::abs(plus) <= 1.0 + 1e-14);
    }
  }

  // half line: 1 / (1 + i t / (sqrt(n) theta*))
  const Complex got = rho(half_line, sp, 50, Vec::Constant(1, 1.0));
  const Complex expect = 1.0 / Complex(1.0, 1.0 / (std::sqrt(50.0) / 3.0));
  CHECK(std::abs(got - expect) <= 1e-14);
}

TEST_CASE("rho against the numeric Fourier oracle (d = 1 variants)") {
  const SaddlePoint sp = exp_saddle(1.5);
  const TailSet half_line = TailSet::full_orthant(Vec::Constant(1, 1.5));
  const TailSet rect = TailSet::rectangle(Vec::Constant(1, 1.5), Vec::Constant(1, 0.4));
  for (const TailSet* set : {&half_line, &rect}) {
    for (double t : {-2.0, -1.0, -0.5, 0.5, 1.0, 2.0}) {
      const Complex got = rho(*set, *&sp, 7, Vec::Constant(1, t));
      const Complex oracle = fourier_oracle_1d(*set, sp, 7, t);
      CHECK(std::abs(got - oracle) <= 1e-6);
    }
  }
}

TEST_CASE("rho tends to one pointwise as n grows") {
  const SaddlePoint sp = exp_saddle(1.5);
  const TailSet half_line = TailSet::full_orthant(Vec::Constant(1, 1.5));
  const TailSet rect = TailSet::rectangle(Vec::Constant(1, 1.5), Vec::Constant(1, 0.4));
  for (const TailSet* set : {&half_line, &rect}) {
    double prev = 1e300;
    for (long n : {10L, 100L, 1000L, 10000L}) {
      const double dev = std::abs(rho(*set, sp, n, Vec::Constant(1, 1.0)) - 1.0);
      CHECK(dev <= prev + 1e-9);
      prev = dev;
    }
    // at n = 1e4, t = 1: |rho - 1| ~ t/(sqrt(n) theta*) = 0.03
    CHECK(prev < 0.05);
  }
}

TEST_CASE("affine orthant with the identity map coincides with the full orthant") {
  auto prod = make_iid_product({make_exponential(1.0), make_exponential(1.0)});
  const SaddlePoint sp = solve_saddle_point(*prod, vec2(1.5, 1.3));
  const TailSet full = TailSet::full_orthant(vec2(1.5, 1.3));
  const TailSet aff = TailSet::affine_orthant(vec2(1.5, 1.3), Mat::Identity(2, 2));
  CHECK(c_constant(aff, sp, 20) == doctest::Approx(c_constant(full, sp, 20)).epsilon(1e-12));
  for (double t1 : {-1.0, 0.5}) {
    const Complex a = rho(aff, sp, 20, vec2(t1, 0.7));
    const Complex f = rho(full, sp, 20, vec2(t1, 0.7));
    CHECK(std::abs(a - f) <= 1e-12);
  }
}

TEST_CASE("partial orthant reduces to the constrained block") {
  auto prod = make_iid_product({make_normal(0.0, 1.0), make_normal(0.0, 1.0)});
  const SaddlePoint sp = solve_saddle_point(*prod, vec2(0.5, 0.0));
  const TailSet part = TailSet::partial_orthant(vec2(0.5, 0.0), 1);
  CHECK(c_constant(part, sp, 25) == doctest::Approx(1.0 / (5.0 * 0.5)).epsilon(1e-9));
  // only the first coordinate of t enters
  const Complex a = rho(part, sp, 25, vec2(1.0, -3.0));
  const Complex b = rho(part, sp, 25, vec2(1.0, 99.0));
  CHECK(std::abs(a - b) <= 1e-15);

  const SetGeometry geom = reduced_geometry(part, sp);
  CHECK(geom.d_eff == 1);
  CHECK(geom.det_eff == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(geom.transform.rows() == 2);
  CHECK(geom.transform.cols() == 1);
  CHECK(geom.transform(1, 0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
}

TEST_CASE("dominating-point violations name the coordinate") {
  auto prod = make_iid_product({make_normal(0.0, 1.0), make_normal(0.0, 1.0)});
  const SaddlePoint sp = solve_saddle_point(*prod, vec2(0.5, 0.0));
  const TailSet full = TailSet::full_orthant(vec2(0.5, 0.0));
  CHECK_THROWS_WITH_AS(c_constant(full, sp, 10), doctest::Contains("coordinate 1"),
                       std::domain_error);
  CHECK_THROWS_WITH_AS(c_constant(full, sp, 10), doctest::Contains("partial orthant"),
                       std::domain_error);

  const SaddlePoint neg = solve_saddle_point(*prod, vec2(0.5, -0.2));
  Mat refl(2, 2);
  refl << 1.0, 0.0, 0.0, 1.0;
  const TailSet aff = TailSet::affine_orthant(vec2(0.5, -0.2), refl);
  CHECK_THROWS_AS(c_constant(aff, neg, 10), std::domain_error);

  // mismatched partial orthant: theta* does not vanish on the free block
  const SaddlePoint sp2 = solve_saddle_point(*prod, vec2(0.5, 0.4));
  const TailSet part = TailSet::partial_orthant(vec2(0.5, 0.4), 1);
  CHECK_THROWS_WITH_AS(validate_dominating_point(part, sp2), doctest::Contains("coordinate 1"),
                       std::domain_error);
}

TEST_CASE("signed combinations defer to per-term estimation") {
  const SaddlePoint sp = exp_saddle(1.5);
  const TailSet combo = TailSet::signed_combination(
      {{1, TailSet::full_orthant(Vec::Constant(1, 1.5))}});
  CHECK_THROWS_AS(c_constant(combo, sp, 10), std::logic_error);
  CHECK_THROWS_AS(rho(combo, sp, 10, Vec::Zero(1)), std::logic_error);
  CHECK_THROWS_AS(combo.contains(Vec::Zero(1)), std::logic_error);
}

TEST_CASE("overshoot kernel: unit at zero, conjugate pair") {
  CHECK(std::abs(rho_overshoot(1.0 / 3.0, 50, 0.0) - 1.0) <= 1e-15);
  const Complex plus = rho_overshoot(1.0 / 3.0, 50, 0.8);
  const Complex minus = rho_overshoot(1.0 / 3.0, 50, -0.8);
  CHECK(std::abs(minus - std::conj(plus)) <= 1e-15);

  // numeric Fourier oracle for the kernel y exp(-sqrt(n) theta y) on y > 0
  const double theta = 1.0 / 3.0;
  const long n = 9;
  const double sn = std::sqrt(static_cast<double>(n));
  for (double t : {-1.0, 0.5, 2.0}) {
    const double upper = 60.0 / (sn * theta);
    const double norm =
        integrate([&](double y) { return y * std::exp(-sn * theta * y); }, 0.0, upper, 1e-12);
    const double re = integrate(
        [&](double y) { return std::cos(t * y) * y * std::exp(-sn * theta * y); }, 0.0, upper,
        1e-12);
    const double im = integrate(
        [&](double y) { return -std::sin(t * y) * y * std::exp(-sn * theta * y); }, 0.0, upper,
        1e-12);
    const Complex oracle(re / norm, im / norm);
    CHECK(std::abs(rho_overshoot(theta, n, t) - oracle) <= 1e-8);
  }
}
