#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace spis {

/// One estimator run: the point estimate plus the per-draw statistics every
/// benchmark column is derived from.
///
/// `weight_variance` is the sample variance of the real parts of the raw
/// per-draw weights; the per-draw variance on the estimate's scale is
/// `scaled_variance()` (= prefactor^2 * weight_variance). For baselines the
/// prefactor is 1 and the two coincide.
struct EstimateReport {
  double estimate = 0.0;
  double weight_mean = 0.0;       // mean of per-draw real weights
  double weight_variance = 0.0;   // sample variance of per-draw real weights
  double second_moment = 0.0;     // E[w^2] of per-draw real weights
  double ci_half_width = 0.0;     // 1.96 * prefactor * sqrt(weight_variance / N)
  double cov = 0.0;               // per-draw std / mean
  std::size_t draws = 0;          // N
  long n = 0;                     // aggregation level
  double mean_imag = 0.0;         // diagnostic: should be 0 within noise
  double imag_std_error = 0.0;
  std::uint64_t seed = 0;
  double wall_time_sec = 0.0;
  double prefactor = 1.0;         // deterministic factor applied to the weight mean
  bool no_hits = false;           // naive MC produced no events
  bool alpha_substituted = false; // IS tail exponent was adjusted to stay normalizable
  double ratio_prediction = 0.0;  // overshoot runs: the asymptotic overshoot/tail ratio 1/theta*

  double scaled_variance() const { return prefactor * prefactor * weight_variance; }
  double std_error() const { return ci_half_width / 1.96; }
  double per_sample_time_us() const {
    return draws == 0 ? 0.0 : wall_time_sec * 1e6 / static_cast<double>(draws);
  }
};

/// One-pass mean/variance of complex per-draw weights (Welford updates,
/// pairwise merge). Merging in a fixed block order keeps results identical
/// across worker counts.
class WeightAccumulator {
 public:
  void add(std::complex<double> w);
  void merge(const WeightAccumulator& other);

  std::size_t count() const { return count_; }
  double mean_real() const { return mean_re_; }
  double mean_imag() const { return mean_im_; }
  double variance_real() const;  // sample variance (n-1 denominator)
  double variance_imag() const;
  double second_moment_real() const;

 private:
  std::size_t count_ = 0;
  double mean_re_ = 0.0, m2_re_ = 0.0;
  double mean_im_ = 0.0, m2_im_ = 0.0;
};

/// Assembles a report from per-draw weights and the deterministic prefactor.
/// Requires at least 2 weights.
EstimateReport aggregate(std::span<const std::complex<double>> weights, double prefactor);

EstimateReport aggregate(const WeightAccumulator& acc, double prefactor);

}  // namespace spis
