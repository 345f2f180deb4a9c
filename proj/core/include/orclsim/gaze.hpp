#pragma once

// Gaze projection, spatial binning and windowed gaze entropy.
//
// Stationary gaze entropy (SGE) is the Shannon entropy of bin occupancy;
// gaze transition entropy (GTE) is the conditional entropy of first-order
// bin-to-bin transitions, weighted by the origin marginal. Both in bits.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "orclsim/bcp.hpp"
#include "orclsim/model.hpp"

namespace orclsim {

/// Pinhole camera for the point-of-view recording. Vertical FOV follows from
/// the horizontal FOV and the aspect ratio (square pixels).
struct CameraModel {
  double horizontal_fov_deg = 110.0;
  int image_width = 1920;
  int image_height = 1080;

  void validate() const;
  double tan_half_horizontal() const;
  double tan_half_vertical() const;
};

enum class Eye { left, right, cyclopean };
enum class Visibility { on_screen, outside_image, behind_camera };

/// Image coordinates, origin top-left, y down.
struct ScreenGazePoint {
  double x = 0.0;
  double y = 0.0;
  Eye eye = Eye::cyclopean;
  Visibility visibility = Visibility::on_screen;

  bool off_screen() const { return visibility != Visibility::on_screen; }
};

/// Head-frame direction (x right, y up, z forward) onto the image plane.
ScreenGazePoint project_direction(Vec3 direction, const CameraModel& camera,
                                  Eye eye = Eye::cyclopean);
/// Unit direction that projects to (x, y).
Vec3 unproject(double x, double y, const CameraModel& camera);

/// One point per valid eye (left first). Invalid eyes are skipped.
std::vector<ScreenGazePoint> project_gaze(const GazeSample& sample, const CameraModel& camera);

/// Mean of the valid eye directions, renormalised; nullopt if neither eye is valid.
std::optional<Vec3> cyclopean_direction(const GazeSample& sample);

struct BinId {
  std::int32_t col = 0;
  std::int32_t row = 0;

  static constexpr BinId off_screen() { return {INT32_MIN, INT32_MIN}; }
  constexpr bool is_off_screen() const { return col == INT32_MIN && row == INT32_MIN; }
  constexpr auto operator<=>(const BinId&) const = default;
};

/// (floor(x / bin_size), floor(y / bin_size)); off-screen points share one bin.
BinId spatial_bin(const ScreenGazePoint& point, double bin_size);

enum class TransitionPolicy { include_self, exclude_self };

struct EntropyWindow {
  std::map<BinId, std::size_t> bin_occupancy;
  std::map<std::pair<BinId, BinId>, std::size_t> transition_counts;
  double window_span = 0.0;  // seconds
  std::size_t sample_count = 0;

  /// Builds counts from a scanpath. std::nullopt entries are invalid samples:
  /// they are not counted and break the transition chain.
  static EntropyWindow from_sequence(std::span<const std::optional<BinId>> sequence,
                                     TransitionPolicy policy = TransitionPolicy::include_self,
                                     double window_span = 0.0);

  std::map<BinId, double> bin_probabilities() const;
  /// Transition counts summed by origin bin.
  std::map<BinId, std::size_t> origin_counts() const;
  /// Transition counts summed by destination bin.
  std::map<BinId, std::size_t> destination_counts() const;
};

/// Shannon entropy in bits of a count distribution; 0 for empty input.
/// Independent of the order of `counts`.
double entropy_bits(std::span<const std::size_t> counts);

/// SGE over occupied bins; 0 for an empty window.
double stationary_entropy(const EntropyWindow& window);
/// GTE; 0 when the window holds no transitions.
double transition_entropy(const EntropyWindow& window);

/// Dispersion-threshold (I-DT) fixation detector settings.
struct FixationFilter {
  double max_dispersion_px = 50.0;  // (max x - min x) + (max y - min y)
  double min_duration_s = 0.1;
};

struct Fixation {
  Timestamp start;
  Timestamp end;
  double x = 0.0;
  double y = 0.0;
};

/// I-DT over time-ordered on-screen points.
std::vector<Fixation> detect_fixations(std::span<const Timestamp> times,
                                       std::span<const ScreenGazePoint> points,
                                       const FixationFilter& filter);

struct EntropyOptions {
  double window_s = 5.0;
  double hop_s = 1.0;
  double bin_size_px = 100.0;
  TransitionPolicy transitions = TransitionPolicy::include_self;
  /// Windows with fewer valid samples are gaps. 0 = half the nominal count.
  std::size_t min_valid_samples = 0;
  std::optional<FixationFilter> fixation_filter;  // off: raw samples
};

struct EntropySeries {
  std::vector<Timestamp> timestamps;  // window end times
  std::vector<std::optional<double>> sge;
  std::vector<std::optional<double>> gte;
  std::vector<std::size_t> valid_samples;
  /// Window indices fed to change-point detection (the non-gap windows).
  std::vector<std::size_t> bcp_index;
  BcpResult sge_bcp;  // empty when fewer than two non-gap windows
  BcpResult gte_bcp;
};

/// Number of windows [t0 + k hop, t0 + k hop + window) that fit inside the
/// stream's coverage [first sample, last sample + 1 / nominal_rate].
std::size_t rolling_window_count(const SampleStream<GazeSample>& gaze,
                                 const EntropyOptions& options);

/// Rolling SGE/GTE over cyclopean gaze, then change-point detection over
/// both series. Throws ArgumentError for an empty stream, non-positive
/// window or hop, or a window shorter than two sample periods.
EntropySeries rolling_entropy(const SampleStream<GazeSample>& gaze, const CameraModel& camera,
                              const EntropyOptions& options, const BcpConfig& bcp_config);

}  // namespace orclsim
