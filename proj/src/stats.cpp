#include "spis/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace spis {

void WeightAccumulator::add(std::complex<double> w) {
  ++count_;
  const double dre = w.real() - mean_re_;
  mean_re_ += dre / static_cast<double>(count_);
  m2_re_ += dre * (w.real() - mean_re_);
  const double dim = w.imag() - mean_im_;
  mean_im_ += dim / static_cast<double>(count_);
  m2_im_ += dim * (w.imag() - mean_im_);
}

void WeightAccumulator::merge(const WeightAccumulator& other) {
  if (other.count_ == 0) return;
  if (count_ == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(count_);
  const double nb = static_cast<double>(other.count_);
  const double nab = na + nb;
  const double dre = other.mean_re_ - mean_re_;
  mean_re_ += dre * nb / nab;
  m2_re_ += other.m2_re_ + dre * dre * na * nb / nab;
  const double dim = other.mean_im_ - mean_im_;
  mean_im_ += dim * nb / nab;
  m2_im_ += other.m2_im_ + dim * dim * na * nb / nab;
  count_ += other.count_;
}

double WeightAccumulator::variance_real() const {
  return count_ < 2 ? 0.0 : m2_re_ / static_cast<double>(count_ - 1);
}

double WeightAccumulator::variance_imag() const {
  return count_ < 2 ? 0.0 : m2_im_ / static_cast<double>(count_ - 1);
}

double WeightAccumulator::second_moment_real() const {
  if (count_ == 0) return 0.0;
  return m2_re_ / static_cast<double>(count_) + mean_re_ * mean_re_;
}

EstimateReport aggregate(const WeightAccumulator& acc, double prefactor) {
  if (acc.count() < 2) throw std::invalid_argument("aggregate: need at least 2 weights");
  EstimateReport r;
  r.draws = acc.count();
  r.prefactor = prefactor;
  r.weight_mean = acc.mean_real();
  r.weight_variance = acc.variance_real();
  r.second_moment = acc.second_moment_real();
  r.estimate = prefactor * acc.mean_real();
  const double n = static_cast<double>(acc.count());
  r.ci_half_width = 1.96 * prefactor * std::sqrt(r.weight_variance / n);
  r.cov = acc.mean_real() != 0.0 ? std::sqrt(r.weight_variance) / std::fabs(acc.mean_real()) : 0.0;
  r.mean_imag = acc.mean_imag();
  r.imag_std_error = std::sqrt(acc.variance_imag() / n);
  return r;
}

EstimateReport aggregate(std::span<const std::complex<double>> weights, double prefactor) {
  WeightAccumulator acc;
  for (const auto& w : weights) acc.add(w);
  return aggregate(acc, prefactor);
}

}  // namespace spis
