#include "orclsim/gaze.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "orclsim/errors.hpp"

namespace orclsim {

void CameraModel::validate() const {
  if (!(horizontal_fov_deg > 0.0 && horizontal_fov_deg < 180.0)) {
    throw ArgumentError("CameraModel: horizontal FOV must be in (0, 180) degrees");
  }
  if (image_width <= 0 || image_height <= 0) {
    throw ArgumentError("CameraModel: image dimensions must be positive");
  }
}

double CameraModel::tan_half_horizontal() const {
  return std::tan(0.5 * horizontal_fov_deg * std::numbers::pi / 180.0);
}

double CameraModel::tan_half_vertical() const {
  return tan_half_horizontal() * static_cast<double>(image_height) /
         static_cast<double>(image_width);
}

ScreenGazePoint project_direction(Vec3 direction, const CameraModel& camera, Eye eye) {
  ScreenGazePoint p;
  p.eye = eye;
  if (!(direction.z > 0.0)) {
    p.visibility = Visibility::behind_camera;
    return p;
  }
  const double w = camera.image_width;
  const double h = camera.image_height;
  p.x = 0.5 * w * (1.0 + direction.x / (direction.z * camera.tan_half_horizontal()));
  p.y = 0.5 * h * (1.0 - direction.y / (direction.z * camera.tan_half_vertical()));
  const bool inside = p.x >= 0.0 && p.x <= w && p.y >= 0.0 && p.y <= h;
  p.visibility = inside ? Visibility::on_screen : Visibility::outside_image;
  return p;
}

Vec3 unproject(double x, double y, const CameraModel& camera) {
  const double dx = (2.0 * x / camera.image_width - 1.0) * camera.tan_half_horizontal();
  const double dy = (1.0 - 2.0 * y / camera.image_height) * camera.tan_half_vertical();
  return normalized({dx, dy, 1.0});
}

std::vector<ScreenGazePoint> project_gaze(const GazeSample& sample, const CameraModel& camera) {
  std::vector<ScreenGazePoint> out;
  if (sample.left.valid) out.push_back(project_direction(sample.left.direction, camera, Eye::left));
  if (sample.right.valid) {
    out.push_back(project_direction(sample.right.direction, camera, Eye::right));
  }
  return out;
}

std::optional<Vec3> cyclopean_direction(const GazeSample& sample) {
  if (sample.left.valid && sample.right.valid) {
    const Vec3 sum = sample.left.direction + sample.right.direction;
    const double len = norm(sum);
    if (len == 0.0) return std::nullopt;  // eyes pointing in opposite directions
    return (1.0 / len) * sum;
  }
  if (sample.left.valid) return sample.left.direction;
  if (sample.right.valid) return sample.right.direction;
  return std::nullopt;
}

BinId spatial_bin(const ScreenGazePoint& point, double bin_size) {
  if (!(bin_size > 0.0)) throw ArgumentError("spatial_bin: bin size must be positive");
  if (point.off_screen() || !std::isfinite(point.x) || !std::isfinite(point.y)) {
    return BinId::off_screen();
  }
  return {static_cast<std::int32_t>(std::floor(point.x / bin_size)),
          static_cast<std::int32_t>(std::floor(point.y / bin_size))};
}

EntropyWindow EntropyWindow::from_sequence(std::span<const std::optional<BinId>> sequence,
                                           TransitionPolicy policy, double window_span) {
  EntropyWindow w;
  w.window_span = window_span;
  const std::optional<BinId>* previous = nullptr;
  for (const auto& bin : sequence) {
    if (!bin) {
      previous = nullptr;
      continue;
    }
    ++w.sample_count;
    ++w.bin_occupancy[*bin];
    if (previous && (policy == TransitionPolicy::include_self || **previous != *bin)) {
      ++w.transition_counts[{**previous, *bin}];
    }
    previous = &bin;
  }
  return w;
}

std::map<BinId, double> EntropyWindow::bin_probabilities() const {
  std::size_t total = 0;
  for (const auto& [bin, c] : bin_occupancy) total += c;
  std::map<BinId, double> out;
  if (total == 0) return out;
  for (const auto& [bin, c] : bin_occupancy) {
    out[bin] = static_cast<double>(c) / static_cast<double>(total);
  }
  return out;
}

std::map<BinId, std::size_t> EntropyWindow::origin_counts() const {
  std::map<BinId, std::size_t> out;
  for (const auto& [edge, c] : transition_counts) out[edge.first] += c;
  return out;
}

std::map<BinId, std::size_t> EntropyWindow::destination_counts() const {
  std::map<BinId, std::size_t> out;
  for (const auto& [edge, c] : transition_counts) out[edge.second] += c;
  return out;
}

double entropy_bits(std::span<const std::size_t> counts) {
  // Summing over sorted counts makes the result independent of bin labels.
  std::vector<std::size_t> sorted;
  sorted.reserve(counts.size());
  std::size_t total = 0;
  for (const auto c : counts) {
    if (c == 0) continue;
    sorted.push_back(c);
    total += c;
  }
  if (total == 0) return 0.0;
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(total);
  double h = 0.0;
  for (const auto c : sorted) {
    const double p = static_cast<double>(c) / n;
    h -= p * std::log2(p);
  }
  return std::max(0.0, h);
}

double stationary_entropy(const EntropyWindow& window) {
  std::vector<std::size_t> counts;
  counts.reserve(window.bin_occupancy.size());
  for (const auto& [bin, c] : window.bin_occupancy) counts.push_back(c);
  return entropy_bits(counts);
}

double transition_entropy(const EntropyWindow& window) {
  // Group rows by origin; H_c = sum_i pi_i H(row i).
  std::map<BinId, std::vector<std::size_t>> rows;
  std::size_t total = 0;
  for (const auto& [edge, c] : window.transition_counts) {
    if (c == 0) continue;
    rows[edge.first].push_back(c);
    total += c;
  }
  if (total == 0) return 0.0;
  std::vector<std::pair<std::size_t, double>> terms;  // (row total, row entropy)
  terms.reserve(rows.size());
  for (const auto& [origin, counts] : rows) {
    std::size_t row_total = 0;
    for (const auto c : counts) row_total += c;
    terms.emplace_back(row_total, entropy_bits(counts));
  }
  std::sort(terms.begin(), terms.end());
  double h = 0.0;
  for (const auto& [row_total, row_entropy] : terms) {
    h += static_cast<double>(row_total) / static_cast<double>(total) * row_entropy;
  }
  return std::max(0.0, h);
}

std::vector<Fixation> detect_fixations(std::span<const Timestamp> times,
                                       std::span<const ScreenGazePoint> points,
                                       const FixationFilter& filter) {
  if (times.size() != points.size()) {
    throw ArgumentError("detect_fixations: times and points differ in length");
  }
  std::vector<Fixation> out;
  const auto dispersion = [&](std::size_t first, std::size_t last) {  // inclusive
    double min_x = points[first].x, max_x = min_x, min_y = points[first].y, max_y = min_y;
    for (std::size_t j = first + 1; j <= last; ++j) {
      min_x = std::min(min_x, points[j].x);
      max_x = std::max(max_x, points[j].x);
      min_y = std::min(min_y, points[j].y);
      max_y = std::max(max_y, points[j].y);
    }
    return (max_x - min_x) + (max_y - min_y);
  };
  std::size_t i = 0;
  while (i < points.size()) {
    std::size_t j = i;
    while (j + 1 < points.size() && times[j] - times[i] < filter.min_duration_s) ++j;
    if (times[j] - times[i] < filter.min_duration_s) break;
    if (dispersion(i, j) > filter.max_dispersion_px) {
      ++i;
      continue;
    }
    while (j + 1 < points.size() && dispersion(i, j + 1) <= filter.max_dispersion_px) ++j;
    Fixation f;
    f.start = times[i];
    f.end = times[j];
    for (std::size_t k = i; k <= j; ++k) {
      f.x += points[k].x;
      f.y += points[k].y;
    }
    const double m = static_cast<double>(j - i + 1);
    f.x /= m;
    f.y /= m;
    out.push_back(f);
    i = j + 1;
  }
  return out;
}

namespace {

void validate_options(const SampleStream<GazeSample>& gaze, const EntropyOptions& options) {
  if (!(options.window_s > 0.0)) throw ArgumentError("rolling_entropy: window must be positive");
  if (!(options.hop_s > 0.0)) throw ArgumentError("rolling_entropy: hop must be positive");
  if (!(options.bin_size_px > 0.0)) throw ArgumentError("rolling_entropy: bin size must be positive");
  if (!(gaze.nominal_rate > 0.0)) throw ArgumentError("rolling_entropy: nominal rate must be positive");
  if (options.window_s < 2.0 / gaze.nominal_rate) {
    throw ArgumentError("rolling_entropy: window is shorter than two sample periods");
  }
}

}  // namespace

std::size_t rolling_window_count(const SampleStream<GazeSample>& gaze,
                                 const EntropyOptions& options) {
  validate_options(gaze, options);
  if (gaze.samples.empty()) return 0;
  const double t0 = gaze.samples.front().t.seconds;
  const double coverage_end = gaze.samples.back().t.seconds + 1.0 / gaze.nominal_rate;
  const double room = (coverage_end - t0 - options.window_s) / options.hop_s;
  if (room < -1e-9) return 0;
  return static_cast<std::size_t>(std::floor(room + 1e-9)) + 1;
}

EntropySeries rolling_entropy(const SampleStream<GazeSample>& gaze, const CameraModel& camera,
                              const EntropyOptions& options, const BcpConfig& bcp_config) {
  camera.validate();
  validate_options(gaze, options);
  if (gaze.samples.empty()) throw ArgumentError("rolling_entropy: gaze stream is empty");
  bcp_config.validate();

  // Per-sample cyclopean screen points; nullopt where no eye is valid.
  std::vector<std::optional<ScreenGazePoint>> points(gaze.samples.size());
  for (std::size_t i = 0; i < gaze.samples.size(); ++i) {
    if (const auto dir = cyclopean_direction(gaze.samples[i].value)) {
      points[i] = project_direction(*dir, camera, Eye::cyclopean);
    }
  }

  // Either raw samples or fixation centroids form the scanpath.
  std::vector<Timestamp> path_times;
  std::vector<std::optional<BinId>> path_bins;
  if (options.fixation_filter) {
    std::vector<Timestamp> times;
    std::vector<ScreenGazePoint> on_screen;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (points[i] && !points[i]->off_screen()) {
        times.push_back(gaze.samples[i].t);
        on_screen.push_back(*points[i]);
      }
    }
    for (const auto& f : detect_fixations(times, on_screen, *options.fixation_filter)) {
      path_times.push_back(f.start);
      path_bins.push_back(spatial_bin({f.x, f.y, Eye::cyclopean, Visibility::on_screen},
                                      options.bin_size_px));
    }
  } else {
    path_times.reserve(points.size());
    path_bins.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
      path_times.push_back(gaze.samples[i].t);
      path_bins.push_back(points[i] ? std::optional(spatial_bin(*points[i], options.bin_size_px))
                                    : std::nullopt);
    }
  }

  std::size_t min_valid = options.min_valid_samples;
  if (min_valid == 0) {
    min_valid = options.fixation_filter
                    ? 2
                    : static_cast<std::size_t>(
                          std::ceil(0.5 * options.window_s * gaze.nominal_rate));
  }

  EntropySeries series;
  const std::size_t windows = rolling_window_count(gaze, options);
  const double t0 = gaze.samples.front().t.seconds;
  std::vector<double> sge_values;
  std::vector<double> gte_values;
  for (std::size_t k = 0; k < windows; ++k) {
    const double start = t0 + static_cast<double>(k) * options.hop_s;
    const double end = start + options.window_s;
    const auto first = std::lower_bound(path_times.begin(), path_times.end(), Timestamp{start});
    const auto last = std::lower_bound(first, path_times.end(), Timestamp{end});
    const std::span<const std::optional<BinId>> slice(
        path_bins.data() + (first - path_times.begin()), static_cast<std::size_t>(last - first));
    const auto window = EntropyWindow::from_sequence(slice, options.transitions, options.window_s);

    series.timestamps.push_back({end});
    series.valid_samples.push_back(window.sample_count);
    if (window.sample_count < min_valid || window.sample_count == 0) {
      series.sge.push_back(std::nullopt);
      series.gte.push_back(std::nullopt);
      continue;
    }
    const double sge = stationary_entropy(window);
    const double gte = transition_entropy(window);
    series.sge.push_back(sge);
    series.gte.push_back(gte);
    series.bcp_index.push_back(k);
    sge_values.push_back(sge);
    gte_values.push_back(gte);
  }

  if (sge_values.size() >= 2) {
    BcpConfig sge_config = bcp_config;
    BcpConfig gte_config = bcp_config;
    sge_config.seed = bcp_config.seed ^ 0x5CE5CE5CEULL;
    gte_config.seed = bcp_config.seed ^ 0x67E67E67EULL;
    series.sge_bcp = bcp_detect(sge_values, sge_config);
    series.gte_bcp = bcp_detect(gte_values, gte_config);
  }
  return series;
}

}  // namespace orclsim
