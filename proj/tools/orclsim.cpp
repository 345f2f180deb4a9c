// orclsim: analyze | simulate | report | schema

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "orclsim/app.hpp"
#include "orclsim/errors.hpp"

namespace fs = std::filesystem;

namespace {

spdlog::level::level_enum parse_level(const std::string& name) {
  if (name == "error") return spdlog::level::err;
  if (name == "warn") return spdlog::level::warn;
  if (name == "info") return spdlog::level::info;
  return spdlog::level::debug;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multimodal ride-session analytics: change points, gaze entropy, event reports"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string log_level = "warn";
  app.add_option("--log-level", log_level, "Logging verbosity")
      ->check(CLI::IsMember({"error", "warn", "info", "debug"}));

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Run the analysis pipeline on one session");
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<double> threshold;
  std::optional<double> window;
  std::optional<double> bin_size;
  std::optional<double> tolerance;
  analyze->add_option("--config", config_path, "Analysis configuration file")->required();
  analyze->add_option("--out", out_dir, "Output directory (default: 'output' from the config)");
  analyze->add_option("--seed", seed, "Random seed");
  analyze->add_option("--threshold", threshold, "Change-point probability threshold");
  analyze->add_option("--window", window, "Entropy window in seconds");
  analyze->add_option("--bin-size", bin_size, "Entropy bin size in pixels");
  analyze->add_option("--tolerance", tolerance, "Event correlation tolerance in seconds");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Generate a synthetic session");
  std::string scenario_path;
  std::string sim_out;
  std::string sim_road;
  std::optional<std::uint64_t> sim_seed;
  simulate->add_option("--config", scenario_path, "Scenario file")->required();
  simulate->add_option("--out", sim_out, "Output directory")->required();
  simulate->add_option("--seed", sim_seed, "Override the scenario seed");
  simulate->add_option("--road", sim_road, "Road network (default: bundled corridor)");

  // report
  auto* report = app.add_subcommand("report", "Merge report.json files from several sessions");
  std::vector<std::string> report_inputs;
  std::string report_out;
  std::string report_road;
  double radius = 20.0;
  report->add_option("reports", report_inputs, "report.json files")->required();
  report->add_option("--out", report_out, "Output directory")->required();
  report->add_option("--road", report_road, "Road network (default: bundled corridor)");
  report->add_option("--radius", radius, "Attribution radius in meters");

  app.add_subcommand("schema", "Describe log formats and configuration keys");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : orclsim::kExitInputError;
  }

  auto logger = spdlog::stderr_color_mt("orclsim");
  spdlog::set_default_logger(logger);
  spdlog::set_level(parse_level(log_level));
  spdlog::set_pattern("%^%l%$: %v");

  if (analyze->parsed()) {
    orclsim::RunConfig config;
    try {
      config = orclsim::RunConfig::load(config_path);
      if (seed) config.seed = *seed;
      if (threshold) config.threshold = *threshold;
      if (window) config.entropy.window_s = *window;
      if (bin_size) config.entropy.bin_size_px = *bin_size;
      if (tolerance) config.tolerance = *tolerance;
      config.validate();
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return orclsim::kExitInputError;
    }
    const fs::path out = out_dir.empty() ? config.resolve(config.output) : fs::path(out_dir);
    return orclsim::cmd_analyze(config, out, std::cerr);
  }
  if (simulate->parsed()) {
    return orclsim::cmd_simulate(scenario_path, sim_out, sim_seed, std::cerr, sim_road);
  }
  if (report->parsed()) {
    const std::vector<fs::path> inputs(report_inputs.begin(), report_inputs.end());
    return orclsim::cmd_report(inputs, report_out, report_road, radius, std::cerr);
  }
  std::cout << orclsim::schema_text();
  return orclsim::kExitOk;
}
