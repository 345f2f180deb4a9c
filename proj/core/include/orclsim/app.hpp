#pragma once

// End-to-end commands shared by the command-line tool and the tests.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "orclsim/bcp.hpp"
#include "orclsim/gaze.hpp"
#include "orclsim/keyvalue.hpp"
#include "orclsim/model.hpp"
#include "orclsim/report.hpp"

namespace orclsim {

enum ExitCode : int { kExitOk = 0, kExitInputError = 2, kExitDataQuality = 3 };

/// Analysis configuration. Paths in the file are relative to the file itself.
struct RunConfig {
  std::filesystem::path base_dir = ".";

  std::string session_id = "session";
  std::string participant_id = "1";
  Mode mode = Mode::bicyclist;

  // Paths as written in the configuration (echoed into reports).
  std::string pose_log;
  std::string gaze_log;
  std::string watch_log;
  std::string annotations;
  std::string column_mapping;
  std::string road_network;  // empty: bundled corridor

  BcpConfig bcp;
  double threshold = 0.5;
  std::size_t min_separation = 5;
  EntropyOptions entropy;
  CameraModel camera;
  double tolerance = 5.0;  // s
  double radius = 20.0;    // m
  double max_error_fraction = 0.05;
  ClockOffsets offsets;
  std::string output = "report";
  std::uint64_t seed = 0;

  /// Throws ConfigError for unknown keys or malformed values.
  static RunConfig from_config(const KeyValueFile& file, std::filesystem::path base_dir);
  static RunConfig load(const std::filesystem::path& path);

  /// Throws ConfigError when a parameter is out of range.
  void validate() const;
  /// Resolves a configured path against base_dir; empty stays empty.
  std::filesystem::path resolve(const std::string& path) const;
  /// Every analysis parameter, without the output directory.
  nlohmann::ordered_json to_json() const;
};

/// Runs the whole pipeline. Throws IoError / FormatError / ConfigError for
/// input problems and DataQualityError when a log's row error fraction
/// exceeds max_error_fraction.
AnalysisReport analyze(const RunConfig& config);

/// analyze + emit_report into `out_dir`; maps failures to exit codes and
/// writes diagnostics to `diag`.
int cmd_analyze(const RunConfig& config, const std::filesystem::path& out_dir, std::ostream& diag);

/// Generates a session from a scenario file into `out_dir`.
int cmd_simulate(const std::filesystem::path& scenario, const std::filesystem::path& out_dir,
                 std::optional<std::uint64_t> seed, std::ostream& diag,
                 const std::filesystem::path& road_network = {});

/// Merges report.json files and re-derives summary tables and the scatter plot.
AnalysisReport aggregate_reports(std::span<const std::filesystem::path> reports,
                                 const RoadNetwork& network, double radius);
int cmd_report(std::span<const std::filesystem::path> reports,
               const std::filesystem::path& out_dir, const std::filesystem::path& road_network,
               double radius, std::ostream& diag);

/// Text for `orclsim schema`: log columns, road format and configuration keys.
std::string schema_text();

/// Worker threads allowed by ORCLSIM_THREADS (default: hardware concurrency, min 1).
unsigned thread_budget();

}  // namespace orclsim
