#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace spis {

/// FNV-1a hash of a byte string; used to derive stream keys from scenario
/// and method identifiers.
std::uint64_t fnv1a(std::string_view s);

/// Counter-based random stream: each (seed, stream, draw index) triple owns
/// an independent generator state, so draw j of a simulation is reproducible
/// regardless of how draws are partitioned across workers.
///
/// State is xoshiro256++ seeded through splitmix64, the scheme recommended
/// by the generator's authors.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream, std::uint64_t draw_index);

  std::uint64_t next_u64();

  /// Uniform on (0,1]; never returns 0, safe as a log() argument.
  double uniform();

  /// Standard normal via Box-Muller (second value cached).
  double normal();

  /// Exponential with the given rate (rate > 0).
  double exponential(double rate);

  /// Gamma(shape, scale) via Marsaglia-Tsang squeeze. shape > 0.
  double gamma(double shape, double scale);

 private:
  std::array<std::uint64_t, 4> state_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace spis
