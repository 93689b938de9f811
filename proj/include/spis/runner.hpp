#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spis/config.hpp"
#include "spis/stats.hpp"

namespace spis {

/// One (scenario, method, n, N) cell of an experiment. Cells that raise keep
/// their error message and render NaN numerics; other cells are unaffected.
struct ResultRow {
  std::string scenario;
  std::string method;
  long n = 0;
  std::size_t draws = 0;
  double estimate = std::numeric_limits<double>::quiet_NaN();
  double ci_half_width = std::numeric_limits<double>::quiet_NaN();
  double weight_variance = std::numeric_limits<double>::quiet_NaN();
  double cov = std::numeric_limits<double>::quiet_NaN();
  double exact_asymptotic = std::numeric_limits<double>::quiet_NaN();
  std::optional<double> variance_reduction;
  double per_sample_time_us = std::numeric_limits<double>::quiet_NaN();
  std::uint64_t seed = 0;
  std::string error;  // empty on success

  // not serialized: the estimate-scale per-draw variance VR is computed from
  double scaled_variance = std::numeric_limits<double>::quiet_NaN();
  std::string note;  // e.g. records an IS tail-exponent substitution
};

/// Executes every (method, n, N) cell with deterministic per-draw seeding.
/// Signed-combination targets run one sub-cell per term plus a combined row.
std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg,
                                      int workers_override = 0);

/// CSV with the fixed header
/// scenario,method,n,N,estimate,ci_half_width,weight_variance,cov,
/// exact_asymptotic,variance_reduction,per_sample_time_us,seed
/// and floats rendered with 9 significant digits.
std::string to_csv(const std::vector<ResultRow>& rows);

/// JSON array mirroring the CSV columns (null for a missing variance
/// reduction, plus "error"/"note" fields when set).
std::string to_json(const std::vector<ResultRow>& rows);

/// Inverse of to_json; used to verify round trips.
std::vector<ResultRow> rows_from_json(const std::string& text);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace spis
