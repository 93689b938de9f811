#include <doctest.h>

#include <cmath>

#include "spis/psi.hpp"

using namespace spis;

namespace {

ModelPtr benchmark_model_3d() {
  Mat b(3, 3);
  b << 0.5, 0.5, 0.0, 0.0, 0.5, 0.5, 0.5, 0.0, 0.5;
  return make_linear_map(make_iid_product({make_exponential(1.0), make_exponential(1.0),
                                           make_exponential(1.0)}),
                         b);
}

}  // namespace

TEST_CASE("psi at the origin is one") {
  auto model = make_exponential(1.0);
  const PsiContext ctx(*model, solve_saddle_point(*model, Vec::Constant(1, 1.5)), 30);
  const Complex at0 = psi(ctx, Vec::Zero(1));
  CHECK(std::abs(at0 - 1.0) <= 1e-12);
}

TEST_CASE("the two evaluation paths agree") {
  struct Case {
    ModelPtr model;
    Vec x0;
  };
  std::vector<Case> cases;
  cases.push_back({make_exponential(1.0), Vec::Constant(1, 1.5)});
  cases.push_back({make_gamma(2.0, 0.5), Vec::Constant(1, 1.7)});
  Vec x3(3);
  x3 << 1.4, 1.5, 1.4;
  cases.push_back({benchmark_model_3d(), x3});

  // the documented spot check
  {
    const PsiContext ctx(*cases[0].model,
                         solve_saddle_point(*cases[0].model, cases[0].x0), 30);
    const Complex a = psi(ctx, Vec::Constant(1, 0.5));
    const Complex b = psi_via_phi(ctx, Vec::Constant(1, 0.5));
    CHECK(std::abs(a - b) <= 1e-10 * std::abs(a));
  }

  for (const auto& c : cases) {
    const PsiContext ctx(*c.model, solve_saddle_point(*c.model, c.x0), 30);
    RngStream rng(101, fnv1a(c.model->name()), 0);
    for (int i = 0; i < 100; ++i) {
      Vec v(c.model->dim());
      for (int k = 0; k < c.model->dim(); ++k) v(k) = 8.0 * rng.uniform() - 4.0;
      const Complex a = psi(ctx, v);
      const Complex b = psi_via_phi(ctx, v);
      CHECK(std::abs(a - b) <= 1e-10 * std::abs(a));
    }
  }
}

TEST_CASE("conjugate symmetry") {
  auto model = make_exponential(1.0);
  const PsiContext ctx(*model, solve_saddle_point(*model, Vec::Constant(1, 1.5)), 30);
  RngStream rng(7, 7, 7);
  for (int i = 0; i < 20; ++i) {
    Vec v = Vec::Constant(1, 6.0 * rng.uniform() - 3.0);
    const Complex plus = psi(ctx, v);
    const Complex minus = psi(ctx, -v);
    CHECK(minus.real() == doctest::Approx(plus.real()).scale(1.0).epsilon(1e-12));
    CHECK(minus.imag() == doctest::Approx(-plus.imag()).scale(1.0).epsilon(1e-12));
  }
}

TEST_CASE("modulus identity with the tilted characteristic function") {
  std::vector<std::pair<ModelPtr, Vec>> cases = {
      {make_exponential(1.0), Vec::Constant(1, 1.5)},
      {benchmark_model_3d(), [] { Vec x(3); x << 1.4, 1.5, 1.4; return x; }()}};
  for (const auto& [model, x0] : cases) {
    const long n = 30;
    const PsiContext ctx(*model, solve_saddle_point(*model, x0), n);
    RngStream rng(55, fnv1a(model->name()), 1);
    for (int i = 0; i < 100; ++i) {
      Vec v(model->dim());
      for (int k = 0; k < model->dim(); ++k) v(k) = 6.0 * rng.uniform() - 3.0;
      const double lhs = std::abs(std::exp(-0.5 * v.squaredNorm()) * psi(ctx, v));
      const Vec u = (ctx.sp.inv_sqrt * v) / ctx.sqrt_n;
      const double phi_mod = std::abs(phi_tilted(*model, ctx.sp.theta, u, x0));
      const double rhs = std::pow(phi_mod, static_cast<double>(n));
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    }
  }
}

TEST_CASE("overflow guard names the offending radius") {
  auto model = make_exponential(1.0);
  const PsiContext ctx(*model, solve_saddle_point(*model, Vec::Constant(1, 1.5)), 30);
  CHECK_THROWS_WITH_AS(psi(ctx, Vec::Constant(1, 60.0)), doctest::Contains("|v|"),
                       std::overflow_error);
  // the fused weight form stays finite where bare psi overflows
  const Complex lw = log_psi_phi(ctx, Vec::Constant(1, 60.0));
  CHECK(lw.real() <= 0.0);
  CHECK(std::isfinite(lw.real()));
}

TEST_CASE("psi flattens pointwise inside the n^(1/6)/2 ball") {
  auto model = make_exponential(1.0);
  // the ball admissible at every tested n; each v satisfies |v| <= n^(1/6)/2
  const double radius = 0.5 * std::pow(30.0, 1.0 / 6.0);
  double prev_max = 1e300;
  for (long n : {30L, 300L, 3000L}) {
    const PsiContext ctx(*model, solve_saddle_point(*model, Vec::Constant(1, 1.5)), n);
    double max_dev = 0.0;
    for (int i = -40; i <= 40; ++i) {
      const Vec v = Vec::Constant(1, radius * i / 40.0);
      max_dev = std::max(max_dev, std::abs(psi(ctx, v) - 1.0));
    }
    CHECK(max_dev < prev_max);
    prev_max = max_dev;
  }
  CHECK(prev_max < 0.01);
}
