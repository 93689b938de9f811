#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "spis/cgf.hpp"
#include "spis/is_density.hpp"
#include "spis/tail_set.hpp"

namespace spis {

/// Raised on malformed or inadmissible configuration; the message carries
/// the offending field path (e.g. "target.x0").
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Method { spis, naive, cmc, oet, bgl };

std::string method_name(Method m);
std::optional<Method> method_from_name(const std::string& name);

enum class TargetKind { density, tail, overshoot, signed_combination };

struct SignedTerm {
  int sign = 1;
  TailSet set;
};

/// A fully validated experiment: model, target, the (method, n, N) grid and
/// the run policy. Seeds are mandatory; there is no wall-clock seeding.
struct ExperimentConfig {
  std::string scenario;
  std::uint64_t seed = 0;
  std::optional<Method> reference;  // method VR is measured against
  ModelPtr model;

  TargetKind target = TargetKind::density;
  std::vector<Vec> density_points;  // one entry per sweep point
  TailSet tail;
  double overshoot_threshold = 0.0;
  std::vector<SignedTerm> terms;

  std::vector<long> n_values;
  std::vector<std::size_t> sample_counts;
  std::vector<Method> methods;

  ISOverrides is_overrides;
  bool antithetic = false;
  int workers = 1;
  std::string output_stem;  // defaults to the scenario id
};

/// Key-value config text with [section] tables; grammar documented in the
/// README. Throws ConfigError with a field path on any problem.
ExperimentConfig parse_experiment_text(const std::string& text);
ExperimentConfig parse_experiment_file(const std::string& path);

}  // namespace spis
