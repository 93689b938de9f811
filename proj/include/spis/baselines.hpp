#pragma once

#include "spis/cgf.hpp"
#include "spis/estimators.hpp"
#include "spis/stats.hpp"
#include "spis/tail_set.hpp"

namespace spis {

/// Reference estimators the saddle-point method is benchmarked against.
/// Per-draw weights are on the estimate's scale (prefactor 1), so
/// weight_variance is directly comparable with scaled_variance() of the
/// saddle-point runs.

/// Indicator average over draws of the mean of n samples. Flags no_hits
/// (estimate 0, degenerate CI) when nothing lands in the set.
EstimateReport naive_mc_tail(const CumulantModel& model, const TailSet& set, long n,
                             std::size_t n_draws, const RunOptions& opts);

/// Naive average of (S_n - n x0)^+ (d = 1).
EstimateReport naive_mc_overshoot(const CumulantModel& model, double x0, long n,
                                  std::size_t n_draws, const RunOptions& opts);

/// Conditional Monte Carlo for the density of the mean at x0 (d = 1, model
/// must expose its marginal density): averages n f(n x0 - S_{n-1}) over
/// sums of n-1 original-law draws.
EstimateReport cmc_density(const CumulantModel& model, double x0, long n,
                           std::size_t n_draws, const RunOptions& opts);

/// State-independent optimal exponential twisting: n iid draws from the
/// theta*-tilted law, weight I(mean in set) exp(n Lambda(theta*) - theta*.S_n).
EstimateReport oet_tail(const CumulantModel& model, const TailSet& set, long n,
                        std::size_t n_draws, const RunOptions& opts);

/// State-dependent twisting for d = 1 half-line tails: before the running sum
/// crosses n x0, each step is tilted so the tilted mean equals the remaining
/// average (n x0 - S_k)/(n - k); after crossing, the original law is used.
/// When the remaining average reaches freeze_multiplier * x0 the tilt is
/// frozen for the rest of the path. A remaining average at or below the
/// original mean is handled by not tilting (the remaining event is no longer
/// rare; an unclamped tilt there has unbounded second moment).
EstimateReport bgl_tail_1d(const CumulantModel& model, double x0, long n,
                           std::size_t n_draws, const RunOptions& opts,
                           double freeze_multiplier = 2.0);

}  // namespace spis
