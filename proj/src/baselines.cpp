#include "spis/baselines.hpp"

#include <cmath>
#include <stdexcept>

#include "spis/parallel.hpp"

namespace spis {

namespace {

EstimateReport finalize(WeightAccumulator acc, long n, double wall, const RunOptions& opts) {
  EstimateReport r = aggregate(acc, 1.0);
  r.n = n;
  r.seed = opts.seed;
  r.wall_time_sec = wall;
  return r;
}

}  // namespace

EstimateReport naive_mc_tail(const CumulantModel& model, const TailSet& set, long n,
                             std::size_t n_draws, const RunOptions& opts) {
  if (n_draws < 2) throw std::invalid_argument("naive_mc: need at least 2 draws");
  const std::uint64_t tag = fnv1a(opts.stream_tag);
  const double inv_n = 1.0 / static_cast<double>(n);
  auto draw = [&](std::size_t j) -> Complex {
    RngStream rng(opts.seed, tag, j);
    Vec sum = Vec::Zero(model.dim());
    for (long i = 0; i < n; ++i) sum += model.sample(rng);
    return set.contains(sum * inv_n) ? 1.0 : 0.0;
  };
  auto [acc, wall] = run_draws(n_draws, opts.workers, draw);
  EstimateReport r = finalize(std::move(acc), n, wall, opts);
  if (r.weight_mean == 0.0) {
    r.no_hits = true;
    r.ci_half_width = 0.0;
  }
  return r;
}

EstimateReport naive_mc_overshoot(const CumulantModel& model, double x0, long n,
                                  std::size_t n_draws, const RunOptions& opts) {
  if (model.dim() != 1)
    throw std::invalid_argument("naive_mc_overshoot: only d = 1 is supported");
  if (n_draws < 2) throw std::invalid_argument("naive_mc: need at least 2 draws");
  const std::uint64_t tag = fnv1a(opts.stream_tag);
  auto draw = [&](std::size_t j) -> Complex {
    RngStream rng(opts.seed, tag, j);
    double s = 0.0;
    for (long i = 0; i < n; ++i) s += model.sample(rng)(0);
    const double over = s - static_cast<double>(n) * x0;
    return over > 0.0 ? over : 0.0;
  };
  auto [acc, wall] = run_draws(n_draws, opts.workers, draw);
  EstimateReport r = finalize(std::move(acc), n, wall, opts);
  if (r.weight_mean == 0.0) r.no_hits = true;
  return r;
}

EstimateReport cmc_density(const CumulantModel& model, double x0, long n,
                           std::size_t n_draws, const RunOptions& opts) {
  if (!model.has_marginal_density())
    throw std::invalid_argument("cmc_density: model does not expose a marginal density");
  if (n_draws < 2) throw std::invalid_argument("cmc_density: need at least 2 draws");
  const std::uint64_t tag = fnv1a(opts.stream_tag);
  const double nx0 = static_cast<double>(n) * x0;
  auto draw = [&](std::size_t j) -> Complex {
    RngStream rng(opts.seed, tag, j);
    double s = 0.0;
    for (long i = 0; i + 1 < n; ++i) s += model.sample(rng)(0);
    return static_cast<double>(n) * model.marginal_density(nx0 - s);
  };
  auto [acc, wall] = run_draws(n_draws, opts.workers, draw);
  return finalize(std::move(acc), n, wall, opts);
}

EstimateReport oet_tail(const CumulantModel& model, const TailSet& set, long n,
                        std::size_t n_draws, const RunOptions& opts) {
  if (n_draws < 2) throw std::invalid_argument("oet_tail: need at least 2 draws");
  const SaddlePoint sp = solve_saddle_point(model, set.x0);
  validate_dominating_point(set, sp);
  const std::uint64_t tag = fnv1a(opts.stream_tag);
  const double n_cgf = static_cast<double>(n) * sp.cgf_value;
  const double inv_n = 1.0 / static_cast<double>(n);
  auto draw = [&](std::size_t j) -> Complex {
    RngStream rng(opts.seed, tag, j);
    Vec sum = Vec::Zero(model.dim());
    for (long i = 0; i < n; ++i) sum += model.sample_tilted(sp.theta, rng);
    if (!set.contains(sum * inv_n)) return 0.0;
    return std::exp(n_cgf - sp.theta.dot(sum));
  };
  auto [acc, wall] = run_draws(n_draws, opts.workers, draw);
  EstimateReport r = finalize(std::move(acc), n, wall, opts);
  if (r.weight_mean == 0.0) r.no_hits = true;
  return r;
}

EstimateReport bgl_tail_1d(const CumulantModel& model, double x0, long n,
                           std::size_t n_draws, const RunOptions& opts,
                           double freeze_multiplier) {
  if (model.dim() != 1) throw std::invalid_argument("bgl_tail_1d: only d = 1 is supported");
  if (n_draws < 2) throw std::invalid_argument("bgl_tail_1d: need at least 2 draws");
  const double mean0 = model.grad1(0.0);
  if (!(x0 > mean0))
    throw std::domain_error("bgl_tail_1d: threshold must exceed the model mean");
  const std::uint64_t tag = fnv1a(opts.stream_tag);
  const double boundary = static_cast<double>(n) * x0;

  auto draw = [&](std::size_t j) -> Complex {
    RngStream rng(opts.seed, tag, j);
    double s = 0.0;
    double log_lr = 0.0;
    double theta = 0.0;
    bool frozen = false;
    Vec theta_vec(1);
    for (long k = 0; k < n; ++k) {
      if (s >= boundary) {
        s += model.sample(rng)(0);
        continue;
      }
      const double remaining_mean = (boundary - s) / static_cast<double>(n - k);
      if (!frozen) {
        if (remaining_mean <= mean0) {
          theta = 0.0;  // remaining event no longer rare, keep the original law
        } else {
          try {
            theta = solve_tilt_1d(model, remaining_mean, theta);
          } catch (const std::runtime_error&) {
            frozen = true;  // infeasible target, freeze the last tilt
          }
          if (remaining_mean >= freeze_multiplier * x0) frozen = true;
        }
      }
      if (theta == 0.0) {
        s += model.sample(rng)(0);
        continue;
      }
      theta_vec(0) = theta;
      const double x = model.sample_tilted(theta_vec, rng)(0);
      log_lr += model.cgf1(theta) - theta * x;
      s += x;
    }
    if (s < boundary) return 0.0;
    return std::exp(log_lr);
  };
  auto [acc, wall] = run_draws(n_draws, opts.workers, draw);
  EstimateReport r = finalize(std::move(acc), n, wall, opts);
  if (r.weight_mean == 0.0) r.no_hits = true;
  return r;
}

}  // namespace spis
