#pragma once

// Synthetic sessions with known ground truth: a constant-speed traversal of
// the corridor, HR level shifts at chosen arclengths, gaze scanning episodes
// and vehicles spaced by headways drawn from an empirical CDF.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "orclsim/gaze.hpp"
#include "orclsim/keyvalue.hpp"
#include "orclsim/model.hpp"
#include "orclsim/spatial.hpp"

namespace orclsim {

/// Right-continuous step CDF over the distinct sample values.
class EmpiricalCdf {
 public:
  /// Throws ArgumentError for empty input or non-positive / non-finite gaps.
  static EmpiricalCdf fit(std::span<const double> gaps);

  const std::vector<double>& support() const { return support_; }
  const std::vector<double>& cumulative() const { return cumulative_; }

  /// F(x) = fraction of samples <= x.
  double operator()(double x) const;
  /// Smallest support value with F >= u, for u in [0, 1].
  double quantile(double u) const;

 private:
  std::vector<double> support_;
  std::vector<double> cumulative_;
};

/// n inverse-transform draws; identical for identical seeds.
std::vector<double> sample_headways(const EmpiricalCdf& cdf, std::size_t n, std::uint64_t seed);

/// Two-sided Kolmogorov-Smirnov distance between a sample and a step CDF.
double ks_statistic(std::span<const double> sample, const EmpiricalCdf& cdf);

struct HrShift {
  std::optional<std::string> intersection;  // arclength relative to it when set
  double offset = 0.0;                      // m
  double delta = 0.0;                       // bpm
};

struct ScanEpisode {
  double start = 0.0;     // s
  double duration = 0.0;  // s
  int spread = 8;         // distinct bins visited
};

struct ScriptedAnnotation {
  double time = 0.0;
  AnnotationCategory category = AnnotationCategory::other;
  std::string label;
};

struct Scenario {
  std::string session_id = "synthetic";
  std::string participant_id = "1";
  Mode mode = Mode::bicyclist;
  double speed = 3.0;            // m/s
  double start_arclength = 0.0;  // m
  std::optional<double> duration;  // s; default: until the corridor end
  double hr_baseline = 75.0;
  double hr_noise = 1.5;  // bpm, Gaussian sigma
  std::vector<HrShift> hr_shifts;
  std::vector<ScanEpisode> scan_episodes;
  double gaze_jitter_deg = 0.5;
  double scan_dwell = 0.25;  // s per bin during a scan episode
  double gaze_dropout = 0.0;  // per-eye probability of an invalid sample
  std::vector<double> headway_gaps;  // empty: bundled default sample
  double vehicle_speed = 10.0;       // m/s
  double vehicle_lane_offset = -3.5;  // m, left of travel is negative
  double timestamp_jitter = 0.0;      // s, uniform +-; must stay below half a gaze period
  double watch_epoch = 0.0;           // s added to smartwatch timestamps
  bool auto_annotations = true;       // approach marks before each intersection
  std::vector<ScriptedAnnotation> annotations;
  std::uint64_t seed = 1;

  /// Throws ConfigError for unknown keys or malformed values.
  static Scenario from_config(const KeyValueFile& file);
  static Scenario load(const std::string& path);
  nlohmann::ordered_json to_json() const;
};

struct InjectedShift {
  double arclength = 0.0;
  double delta = 0.0;
  double time = 0.0;  // s, when the traversal reaches the arclength
  std::optional<std::string> intersection;
  double offset = 0.0;
};

struct InjectedScan {
  double start = 0.0;
  double duration = 0.0;
  int spread = 0;
  std::vector<BinId> bins;
};

struct SpawnedVehicle {
  int vehicle_id = 0;
  int model_class = 0;
  double spawn_time = 0.0;
};

struct GroundTruthManifest {
  std::uint64_t seed = 0;
  std::vector<InjectedShift> hr_shifts;
  std::vector<InjectedScan> scan_episodes;
  std::vector<double> headways;
  std::vector<SpawnedVehicle> vehicles;

  nlohmann::ordered_json to_json() const;
};

struct GeneratedSession {
  SessionRecording session;
  GroundTruthManifest manifest;
};

inline constexpr double kPoseRate = 30.0;
inline constexpr double kGazeRate = 120.0;
inline constexpr double kHrRate = 1.0;
inline constexpr double kMotionRate = 10.0;
inline constexpr int kVehicleModels = 4;

/// Throws ArgumentError for non-positive speed, a shift outside the corridor
/// or past the end of the run, or an invalid episode.
GeneratedSession generate_session(const Scenario& scenario, const RoadNetwork& network,
                                  const CameraModel& camera = {});

/// Writes pose.csv, gaze.csv, watch.csv, annotations.csv, manifest.json, a
/// copy of the road network (road.road) and an analyze.cfg that points at them.
void write_session_files(const GeneratedSession& generated, const Scenario& scenario,
                         const RoadNetwork& network, const std::filesystem::path& dir);

/// Synthetic headway sample shipped with the library (seconds).
std::vector<double> default_headway_gaps();

/// Path of the bundled default scenario.
std::string bundled_scenario_path();

}  // namespace orclsim
