#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <iostream>

#include "spis/config.hpp"
#include "spis/runner.hpp"

namespace fs = std::filesystem;

namespace {

std::string scenario_dir() {
  if (const char* env = std::getenv("SPIS_SCENARIO_DIR")) return env;
#ifdef SPIS_SCENARIO_DIR_DEFAULT
  return SPIS_SCENARIO_DIR_DEFAULT;
#else
  return "scenarios";
#endif
}

int cmd_run(const std::string& config_path, const std::string& out_dir, int workers,
            const std::string& format) {
  spis::ExperimentConfig cfg;
  try {
    cfg = spis::parse_experiment_file(config_path);
  } catch (const spis::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  try {
    const auto rows = spis::run_experiment(cfg, workers);
    fs::create_directories(out_dir);
    const std::string stem = (fs::path(out_dir) / cfg.output_stem).string();
    if (format == "csv" || format == "both")
      spis::write_text_file(stem + ".csv", spis::to_csv(rows));
    if (format == "json" || format == "both")
      spis::write_text_file(stem + ".json", spis::to_json(rows));
    std::cout << spis::to_csv(rows);
    for (const auto& row : rows) {
      if (!row.error.empty())
        std::cerr << "cell error [" << row.scenario << "/" << row.method << " n=" << row.n
                  << " N=" << row.draws << "]: " << row.error << "\n";
      if (!row.note.empty())
        std::cerr << "note [" << row.scenario << "/" << row.method << " n=" << row.n
                  << "]: " << row.note << "\n";
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_validate(const std::string& config_path) {
  try {
    spis::parse_experiment_file(config_path);
    std::cout << "ok\n";
    return 0;
  } catch (const spis::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_list_scenarios(const std::string& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    std::cerr << "scenario directory not found: " << dir << "\n";
    return 1;
  }
  std::vector<std::string> names;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.path().extension() == ".cfg") names.push_back(entry.path().stem().string());
  std::sort(names.begin(), names.end());
  for (const auto& n : names) std::cout << n << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Saddle-point importance-sampling rare-event benchmark runner"};
  app.require_subcommand(1);

  std::string config_path, out_dir = ".", format = "both";
  int workers = 0;
  auto* run = app.add_subcommand("run", "Run an experiment configuration");
  run->add_option("config", config_path, "Path to the config file")->required();
  run->add_option("--out", out_dir, "Output directory (default: current)");
  run->add_option("--workers", workers, "Worker threads (overrides the config)");
  run->add_option("--format", format, "Report format: csv, json or both")
      ->check(CLI::IsMember({"csv", "json", "both"}));

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Check a config file without running");
  validate->add_option("config", validate_path, "Path to the config file")->required();

  std::string dir = scenario_dir();
  auto* list = app.add_subcommand("list-scenarios", "List bundled scenario configs");
  list->add_option("--dir", dir, "Scenario directory");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return cmd_run(config_path, out_dir, workers, format);
  if (validate->parsed()) return cmd_validate(validate_path);
  return cmd_list_scenarios(dir);
}
