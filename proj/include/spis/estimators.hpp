#pragma once

#include <string>

#include "spis/cgf.hpp"
#include "spis/is_density.hpp"
#include "spis/stats.hpp"
#include "spis/tail_set.hpp"

namespace spis {

/// Shared knobs for one estimator run. `stream_tag` keys the per-draw random
/// streams together with (seed, draw index): a given tag and seed reproduce
/// the same draws for any worker count.
struct RunOptions {
  std::uint64_t seed = 0;
  std::string stream_tag;
  int workers = 1;
  bool antithetic = false;  // pair each v with -v (off by default)
};

/// Density of the mean of n iid draws at x0, estimated as
/// prefactor * mean of Re[ psi(V) phi(V) / g(V) ] over V ~ g.
/// Per-draw cost does not depend on n.
EstimateReport estimate_density(const CumulantModel& model, const Vec& x0, long n,
                                std::size_t n_draws, const ISDensityParams& params,
                                const RunOptions& opts);

/// P(mean of n draws lies in the set), estimated as
/// prefactor * mean of Re[ rho(A V) psi(V) phi(V) / g(V) ].
EstimateReport estimate_tail(const CumulantModel& model, const TailSet& set, long n,
                             std::size_t n_draws, const ISDensityParams& params,
                             const RunOptions& opts);

/// E[(S_n - n x0)^+] for d = 1, theta* > 0, with the overshoot kernel
/// rho~ in place of the set kernel. Also exposes the asymptotic ratio
/// 1/theta* against the tail probability through the saddle point.
EstimateReport estimate_overshoot(const CumulantModel& model, double x0, long n,
                                  std::size_t n_draws, const ISDensityParams& params,
                                  const RunOptions& opts);

}  // namespace spis
