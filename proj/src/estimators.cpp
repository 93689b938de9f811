#include "spis/estimators.hpp"

#include <cmath>
#include <stdexcept>

#include "spis/parallel.hpp"
#include "spis/psi.hpp"

namespace spis {

namespace {

void check_draw_count(std::size_t n_draws) {
  if (n_draws < 2) throw std::invalid_argument("estimator: need at least 2 draws");
}

void check_params_dim(const ISDensityParams& params, int d) {
  if (params.d != d)
    throw std::invalid_argument("estimator: IS parameter dimension does not match the model");
}

EstimateReport finalize(WeightAccumulator acc, double prefactor, long n, double wall,
                        const RunOptions& opts, const ISDensityParams& params) {
  EstimateReport r = aggregate(acc, prefactor);
  r.n = n;
  r.seed = opts.seed;
  r.wall_time_sec = wall;
  r.alpha_substituted = params.alpha_substituted;
  return r;
}

// weight kernel shared by the three estimators; `extra` multiplies in the
// set or overshoot characteristic factor evaluated at t = A v
template <typename ExtraFn>
EstimateReport run_spis(const PsiContext& ctx,
                        double prefactor, std::size_t n_draws,
                        const ISDensityParams& params, const RunOptions& opts,
                        ExtraFn&& extra) {
  const std::uint64_t tag = fnv1a(opts.stream_tag);
  auto weight_at = [&](const Vec& v) -> Complex {
    const Complex lw = log_psi_phi(ctx, v) - is_log_pdf(params, v.norm());
    // exp underflows to an exact 0 below -745; skip the subnormal slow path
    if (lw.real() < -745.0) return {0.0, 0.0};
    return extra(v) * std::exp(lw);
  };
  auto draw = [&](std::size_t j) -> Complex {
    RngStream rng(opts.seed, tag, j);
    const Vec v = is_sample(params, rng);
    if (!opts.antithetic) return weight_at(v);
    return 0.5 * (weight_at(v) + weight_at(-v));
  };
  auto [acc, wall] = run_draws(n_draws, opts.workers, draw);
  return finalize(std::move(acc), prefactor, ctx.n, wall, opts, params);
}

}  // namespace

EstimateReport estimate_density(const CumulantModel& model, const Vec& x0, long n,
                                std::size_t n_draws, const ISDensityParams& params,
                                const RunOptions& opts) {
  check_draw_count(n_draws);
  check_params_dim(params, model.dim());
  if (n < static_cast<long>(model.integrability().gamma))
    throw std::domain_error(
        "estimate_density: n is below the declared characteristic-function "
        "integrability order, the mean may not have a density");
  const SaddlePoint sp = solve_saddle_point(model, x0);
  const double prefactor = exact_asymptotic_density(sp, n);
  const PsiContext ctx(model, sp, n);
  return run_spis(ctx, prefactor, n_draws, params, opts,
                  [](const Vec&) -> Complex { return 1.0; });
}

EstimateReport estimate_tail(const CumulantModel& model, const TailSet& set, long n,
                             std::size_t n_draws, const ISDensityParams& params,
                             const RunOptions& opts) {
  check_draw_count(n_draws);
  if (set.kind == TailSet::Kind::signed_combination)
    throw std::invalid_argument(
        "estimate_tail: signed combinations are estimated term by term");
  const SaddlePoint sp = solve_saddle_point(model, set.x0);
  validate_dominating_point(set, sp);
  const SetGeometry geom = reduced_geometry(set, sp);
  if (params.d != geom.d_eff)
    throw std::invalid_argument(
        "estimate_tail: IS parameter dimension must match the set's effective dimension");
  const double prefactor = exact_asymptotic_tail(sp, set, n);
  const PsiContext ctx(model, sp, n, geom.transform);
  // rho reads the first d_eff components of its argument
  const Mat freq = geom.transform.topRows(geom.d_eff);
  return run_spis(ctx, prefactor, n_draws, params, opts,
                  [&](const Vec& v) -> Complex { return rho(set, sp, n, freq * v); });
}

EstimateReport estimate_overshoot(const CumulantModel& model, double x0, long n,
                                  std::size_t n_draws, const ISDensityParams& params,
                                  const RunOptions& opts) {
  check_draw_count(n_draws);
  if (model.dim() != 1)
    throw std::invalid_argument("estimate_overshoot: only d = 1 is supported");
  check_params_dim(params, 1);
  const SaddlePoint sp = solve_saddle_point(model, Vec::Constant(1, x0));
  const double theta = sp.theta(0);
  if (theta <= 0.0)
    throw std::domain_error("estimate_overshoot: not a tail event (theta* <= 0)");
  const double prefactor = exact_asymptotic_overshoot(sp, n);
  const double a_scalar = sp.inv_sqrt(0, 0);
  const PsiContext ctx(model, sp, n);
  EstimateReport r = run_spis(ctx, prefactor, n_draws, params, opts,
                              [&](const Vec& v) -> Complex {
                                return rho_overshoot(theta, n, a_scalar * v(0));
                              });
  r.ratio_prediction = 1.0 / theta;
  return r;
}

}  // namespace spis
