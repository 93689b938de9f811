#include "spis/runner.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>

#include <nlohmann/json.hpp>

#include "spis/baselines.hpp"
#include "spis/estimators.hpp"
#include "spis/saddlepoint.hpp"

namespace spis {

namespace {

double exact_asymptotic_for(const ExperimentConfig& cfg, long n, std::size_t point_idx) {
  switch (cfg.target) {
    case TargetKind::density: {
      const SaddlePoint sp = solve_saddle_point(*cfg.model, cfg.density_points[point_idx]);
      return exact_asymptotic_density(sp, n);
    }
    case TargetKind::tail: {
      const SaddlePoint sp = solve_saddle_point(*cfg.model, cfg.tail.x0);
      return exact_asymptotic_tail(sp, cfg.tail, n);
    }
    case TargetKind::overshoot: {
      const SaddlePoint sp =
          solve_saddle_point(*cfg.model, Vec::Constant(1, cfg.overshoot_threshold));
      return exact_asymptotic_overshoot(sp, n);
    }
    case TargetKind::signed_combination: {
      double sum = 0.0;
      for (const auto& term : cfg.terms) {
        const SaddlePoint sp = solve_saddle_point(*cfg.model, term.set.x0);
        sum += term.sign * exact_asymptotic_tail(sp, term.set, n);
      }
      return sum;
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

EstimateReport run_cell(const ExperimentConfig& cfg, Method method, long n,
                        std::size_t n_draws, const RunOptions& opts,
                        std::size_t point_idx) {
  const CumulantModel& model = *cfg.model;
  const int is_dim = cfg.target == TargetKind::tail ? cfg.tail.effective_dim()
                     : cfg.target == TargetKind::overshoot ? 1
                                                           : model.dim();
  const ISDensityParams params = choose_parameters(n, is_dim, cfg.is_overrides);
  switch (cfg.target) {
    case TargetKind::density:
      if (method == Method::spis)
        return estimate_density(model, cfg.density_points[point_idx], n, n_draws, params, opts);
      return cmc_density(model, cfg.density_points[point_idx](0), n, n_draws, opts);
    case TargetKind::tail:
      switch (method) {
        case Method::spis:
          return estimate_tail(model, cfg.tail, n, n_draws, params, opts);
        case Method::naive:
          return naive_mc_tail(model, cfg.tail, n, n_draws, opts);
        case Method::oet:
          return oet_tail(model, cfg.tail, n, n_draws, opts);
        case Method::bgl:
          return bgl_tail_1d(model, cfg.tail.x0(0), n, n_draws, opts);
        default:
          break;
      }
      break;
    case TargetKind::overshoot:
      if (method == Method::spis)
        return estimate_overshoot(model, cfg.overshoot_threshold, n, n_draws, params, opts);
      return naive_mc_overshoot(model, cfg.overshoot_threshold, n, n_draws, opts);
    case TargetKind::signed_combination:
      break;  // handled by the caller
  }
  throw std::logic_error("run_cell: inadmissible method/target pair");
}

ResultRow base_row(const ExperimentConfig& cfg, Method method, long n, std::size_t n_draws) {
  ResultRow row;
  row.scenario = cfg.scenario;
  row.method = method_name(method);
  row.n = n;
  row.draws = n_draws;
  row.seed = cfg.seed;
  return row;
}

void fill_row(ResultRow& row, const EstimateReport& rep) {
  row.estimate = rep.estimate;
  row.ci_half_width = rep.ci_half_width;
  row.weight_variance = rep.weight_variance;
  row.cov = rep.cov;
  row.per_sample_time_us = rep.per_sample_time_us();
  row.scaled_variance = rep.scaled_variance();
  if (rep.alpha_substituted)
    row.note = "is tail exponent raised to d+1 (configured value not normalizable)";
  if (rep.no_hits) row.note = "no hits";
}

std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", x);
  return buf;
}

}  // namespace

std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg, int workers_override) {
  const int workers = workers_override > 0 ? workers_override : cfg.workers;
  std::vector<ResultRow> rows;

  const std::size_t n_points =
      cfg.target == TargetKind::density ? cfg.density_points.size() : 1;

  // deterministic exact-asymptotic column per (n, sweep point), shared by all methods
  std::map<std::pair<long, std::size_t>, double> asym;
  for (long n : cfg.n_values) {
    for (std::size_t pi = 0; pi < n_points; ++pi) {
      try {
        asym[{n, pi}] = exact_asymptotic_for(cfg, n, pi);
      } catch (const std::exception&) {
        asym[{n, pi}] = std::numeric_limits<double>::quiet_NaN();
      }
    }
  }

  auto scenario_tag = [&](std::size_t pi) {
    if (cfg.target != TargetKind::density || n_points == 1) return cfg.scenario;
    return cfg.scenario + "@x=" + fmt_double(cfg.density_points[pi](0));
  };

  for (Method method : cfg.methods) {
    for (long n : cfg.n_values) {
      for (std::size_t n_draws : cfg.sample_counts) {
        if (cfg.target == TargetKind::signed_combination) {
          // one sub-run per signed term; the combination aggregates them
          ResultRow combined = base_row(cfg, method, n, n_draws);
          combined.exact_asymptotic = asym[{n, 0}];
          double est = 0.0, var_of_mean = 0.0, scaled_var = 0.0, wall = 0.0;
          bool ok = true;
          std::vector<ResultRow> term_rows;
          for (std::size_t k = 0; k < cfg.terms.size(); ++k) {
            const auto& term = cfg.terms[k];
            ResultRow trow = base_row(cfg, method, n, n_draws);
            trow.scenario = cfg.scenario + "#term" + std::to_string(k + 1);
            RunOptions opts{cfg.seed, trow.scenario + "/" + method_name(method), workers,
                            cfg.antithetic};
            try {
              const ISDensityParams params =
                  choose_parameters(n, term.set.effective_dim(), cfg.is_overrides);
              const EstimateReport rep =
                  estimate_tail(*cfg.model, term.set, n, n_draws, params, opts);
              fill_row(trow, rep);
              const SaddlePoint sp = solve_saddle_point(*cfg.model, term.set.x0);
              trow.exact_asymptotic = exact_asymptotic_tail(sp, term.set, n);
              est += term.sign * rep.estimate;
              var_of_mean += rep.scaled_variance() / static_cast<double>(rep.draws);
              scaled_var += rep.scaled_variance();
              wall += rep.wall_time_sec;
            } catch (const std::exception& e) {
              trow.error = e.what();
              ok = false;
            }
            term_rows.push_back(std::move(trow));
          }
          for (auto& tr : term_rows) rows.push_back(std::move(tr));
          if (ok) {
            combined.estimate = est;
            combined.ci_half_width = 1.96 * std::sqrt(var_of_mean);
            combined.weight_variance = scaled_var;
            combined.scaled_variance = scaled_var;
            combined.cov = est != 0.0 ? std::sqrt(scaled_var) / std::fabs(est) : 0.0;
            combined.per_sample_time_us =
                wall * 1e6 / static_cast<double>(n_draws * cfg.terms.size());
          } else {
            combined.error = "one or more terms failed";
          }
          rows.push_back(std::move(combined));
          continue;
        }

        for (std::size_t pi = 0; pi < n_points; ++pi) {
          ResultRow row = base_row(cfg, method, n, n_draws);
          row.scenario = scenario_tag(pi);
          row.exact_asymptotic = asym[{n, pi}];
          RunOptions opts{cfg.seed, row.scenario + "/" + method_name(method), workers,
                          cfg.antithetic};
          try {
            const EstimateReport rep = run_cell(cfg, method, n, n_draws, opts, pi);
            fill_row(row, rep);
          } catch (const std::exception& e) {
            row.error = e.what();
          }
          rows.push_back(std::move(row));
        }
      }
    }
  }

  // variance reduction against the configured reference method, matched on
  // (scenario tag, n, N)
  if (cfg.reference) {
    const std::string ref = method_name(*cfg.reference);
    for (auto& row : rows) {
      if (!row.error.empty()) continue;
      for (const auto& other : rows) {
        if (other.method == ref && other.scenario == row.scenario && other.n == row.n &&
            other.draws == row.draws && other.error.empty() && other.scaled_variance > 0.0) {
          row.variance_reduction = other.scaled_variance / row.scaled_variance;
          break;
        }
      }
    }
  }
  return rows;
}

std::string to_csv(const std::vector<ResultRow>& rows) {
  std::string out =
      "scenario,method,n,N,estimate,ci_half_width,weight_variance,cov,"
      "exact_asymptotic,variance_reduction,per_sample_time_us,seed\n";
  for (const auto& r : rows) {
    out += r.scenario + "," + r.method + "," + std::to_string(r.n) + "," +
           std::to_string(r.draws) + "," + fmt_double(r.estimate) + "," +
           fmt_double(r.ci_half_width) + "," + fmt_double(r.weight_variance) + "," +
           fmt_double(r.cov) + "," + fmt_double(r.exact_asymptotic) + ",";
    if (r.variance_reduction) out += fmt_double(*r.variance_reduction);
    out += "," + fmt_double(r.per_sample_time_us) + "," + std::to_string(r.seed) + "\n";
  }
  return out;
}

std::string to_json(const std::vector<ResultRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json j{{"scenario", r.scenario},
                     {"method", r.method},
                     {"n", r.n},
                     {"N", r.draws},
                     {"estimate", r.estimate},
                     {"ci_half_width", r.ci_half_width},
                     {"weight_variance", r.weight_variance},
                     {"cov", r.cov},
                     {"exact_asymptotic", r.exact_asymptotic},
                     {"per_sample_time_us", r.per_sample_time_us},
                     {"seed", r.seed}};
    if (r.variance_reduction)
      j["variance_reduction"] = *r.variance_reduction;
    else
      j["variance_reduction"] = nullptr;
    if (!r.error.empty()) j["error"] = r.error;
    if (!r.note.empty()) j["note"] = r.note;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

std::vector<ResultRow> rows_from_json(const std::string& text) {
  const auto arr = nlohmann::json::parse(text);
  std::vector<ResultRow> rows;
  for (const auto& j : arr) {
    ResultRow r;
    r.scenario = j.at("scenario").get<std::string>();
    r.method = j.at("method").get<std::string>();
    r.n = j.at("n").get<long>();
    r.draws = j.at("N").get<std::size_t>();
    auto num = [&](const char* key) {
      const auto& v = j.at(key);
      return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
    };
    r.estimate = num("estimate");
    r.ci_half_width = num("ci_half_width");
    r.weight_variance = num("weight_variance");
    r.cov = num("cov");
    r.exact_asymptotic = num("exact_asymptotic");
    if (!j.at("variance_reduction").is_null())
      r.variance_reduction = j.at("variance_reduction").get<double>();
    r.per_sample_time_us = num("per_sample_time_us");
    r.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("error")) r.error = j.at("error").get<std::string>();
    if (j.contains("note")) r.note = j.at("note").get<std::string>();
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  out << content;
  if (!out) throw std::runtime_error(path + ": write failed");
}

}  // namespace spis
