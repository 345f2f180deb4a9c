#include "orclsim/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <set>

#include "orclsim/errors.hpp"
#include "orclsim/ingest.hpp"
#include "orclsim/random.hpp"

namespace orclsim {

namespace {

using ojson = nlohmann::ordered_json;

// Independent random streams per generated quantity.
enum Stream : std::uint64_t {
  kStreamHr = 1,
  kStreamGaze = 2,
  kStreamHeadways = 3,
  kStreamModels = 4,
  kStreamJitter = 5,
  kStreamMotion = 6,
  kStreamScan = 7,
  kStreamDropout = 8,
};

constexpr double kGravity = 9.80665;
constexpr double kBinSize = 100.0;
constexpr double kApproachDistance = 10.0;  // m before an intersection

double eye_height(Mode mode) { return mode == Mode::bicyclist ? 1.25 : 1.65; }

std::size_t sample_count(double duration, double rate) {
  if (duration <= 0.0) return 0;
  return static_cast<std::size_t>(std::ceil(duration * rate - 1e-9));
}

double to_number(const KeyValueFile::Entry& e, std::string_view text) {
  const auto v = parse_double(text);
  if (!v || !std::isfinite(*v)) {
    throw ConfigError(e.key.empty() ? std::string("bad number")
                                    : "line " + std::to_string(e.line) + ": bad number '" +
                                          std::string(text) + "' for '" + e.key + "'");
  }
  return *v;
}

std::vector<std::string_view> fields_of(const KeyValueFile::Entry& e, std::size_t min,
                                        std::size_t max) {
  const auto f = split_whitespace(e.value);
  if (f.size() < min || f.size() > max) {
    throw ConfigError("line " + std::to_string(e.line) + ": '" + e.key + "' expects " +
                      std::to_string(min) + (min == max ? "" : "+") + " fields");
  }
  return f;
}

bool to_bool(const KeyValueFile::Entry& e) {
  const auto v = trim(e.value);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("line " + std::to_string(e.line) + ": bad boolean for '" + e.key + "'");
}

double jittered(double t, double jitter, std::mt19937_64& rng) {
  if (jitter == 0.0) return t;
  return t + jitter * (2.0 * unit_uniform(rng) - 1.0);
}

}  // namespace

EmpiricalCdf EmpiricalCdf::fit(std::span<const double> gaps) {
  if (gaps.empty()) throw ArgumentError("fit_empirical_cdf: no gaps");
  std::vector<double> sorted(gaps.begin(), gaps.end());
  for (const double g : sorted) {
    if (!(std::isfinite(g) && g > 0.0)) {
      throw ArgumentError("fit_empirical_cdf: gaps must be positive and finite");
    }
  }
  std::sort(sorted.begin(), sorted.end());
  EmpiricalCdf cdf;
  const double n = static_cast<double>(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i]) continue;
    cdf.support_.push_back(sorted[i]);
    cdf.cumulative_.push_back(static_cast<double>(i + 1) / n);
  }
  return cdf;
}

double EmpiricalCdf::operator()(double x) const {
  const auto it = std::upper_bound(support_.begin(), support_.end(), x);
  if (it == support_.begin()) return 0.0;
  return cumulative_[static_cast<std::size_t>(it - support_.begin()) - 1];
}

double EmpiricalCdf::quantile(double u) const {
  const auto it = std::lower_bound(cumulative_.begin(), cumulative_.end(), u);
  if (it == cumulative_.end()) return support_.back();
  return support_[static_cast<std::size_t>(it - cumulative_.begin())];
}

std::vector<double> sample_headways(const EmpiricalCdf& cdf, std::size_t n, std::uint64_t seed) {
  auto rng = make_engine(seed, kStreamHeadways);
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(cdf.quantile(unit_uniform(rng)));
  return out;
}

double ks_statistic(std::span<const double> sample, const EmpiricalCdf& cdf) {
  if (sample.empty()) return 1.0;
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> points = sorted;
  points.insert(points.end(), cdf.support().begin(), cdf.support().end());
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (const double x : points) {
    const auto k = std::upper_bound(sorted.begin(), sorted.end(), x) - sorted.begin();
    d = std::max(d, std::abs(static_cast<double>(k) / n - cdf(x)));
  }
  return d;
}

Scenario Scenario::from_config(const KeyValueFile& file) {
  Scenario s;
  for (const auto& e : file.entries()) {
    const std::string_view v = trim(e.value);
    const auto number = [&] { return to_number(e, v); };
    if (e.key == "session_id") {
      s.session_id = std::string(v);
    } else if (e.key == "participant_id") {
      s.participant_id = std::string(v);
    } else if (e.key == "mode") {
      const auto m = parse_mode(v);
      if (!m) throw ConfigError("line " + std::to_string(e.line) + ": unknown mode");
      s.mode = *m;
    } else if (e.key == "speed") {
      s.speed = number();
    } else if (e.key == "start_arclength") {
      s.start_arclength = number();
    } else if (e.key == "duration") {
      s.duration = number();
    } else if (e.key == "hr_baseline") {
      s.hr_baseline = number();
    } else if (e.key == "hr_noise") {
      s.hr_noise = number();
    } else if (e.key == "hr_shift") {
      const auto f = fields_of(e, 3, 3);
      s.hr_shifts.push_back({std::string(f[0]), to_number(e, f[1]), to_number(e, f[2])});
    } else if (e.key == "hr_shift_at") {
      const auto f = fields_of(e, 2, 2);
      s.hr_shifts.push_back({std::nullopt, to_number(e, f[0]), to_number(e, f[1])});
    } else if (e.key == "scan_episode") {
      const auto f = fields_of(e, 3, 3);
      s.scan_episodes.push_back(
          {to_number(e, f[0]), to_number(e, f[1]), static_cast<int>(to_number(e, f[2]))});
    } else if (e.key == "gaze_jitter_deg") {
      s.gaze_jitter_deg = number();
    } else if (e.key == "scan_dwell") {
      s.scan_dwell = number();
    } else if (e.key == "gaze_dropout") {
      s.gaze_dropout = number();
    } else if (e.key == "headway_gaps") {
      for (const auto f : fields_of(e, 1, SIZE_MAX)) s.headway_gaps.push_back(to_number(e, f));
    } else if (e.key == "vehicle_speed") {
      s.vehicle_speed = number();
    } else if (e.key == "vehicle_lane_offset") {
      s.vehicle_lane_offset = number();
    } else if (e.key == "timestamp_jitter") {
      s.timestamp_jitter = number();
    } else if (e.key == "watch_epoch") {
      s.watch_epoch = number();
    } else if (e.key == "auto_annotations") {
      s.auto_annotations = to_bool(e);
    } else if (e.key == "annotation") {
      const auto f = fields_of(e, 3, SIZE_MAX);
      const auto label_at = static_cast<std::size_t>(f[2].data() - e.value.data());
      s.annotations.push_back({to_number(e, f[0]), parse_annotation_category(f[1]),
                               std::string(trim(std::string_view(e.value).substr(label_at)))});
    } else if (e.key == "seed") {
      const auto seed = parse_int(v);
      if (!seed || *seed < 0) throw ConfigError("line " + std::to_string(e.line) + ": bad seed");
      s.seed = static_cast<std::uint64_t>(*seed);
    } else {
      throw ConfigError(file.source() + ":" + std::to_string(e.line) + ": unknown scenario key '" +
                        e.key + "'");
    }
  }
  return s;
}

Scenario Scenario::load(const std::string& path) {
  try {
    return from_config(KeyValueFile::load(path));
  } catch (const ConfigError& e) {
    const std::string what = e.what();
    if (what.rfind(path, 0) == 0) throw;
    throw ConfigError(path + ": " + what);
  }
}

ojson Scenario::to_json() const {
  ojson j;
  j["session_id"] = session_id;
  j["participant_id"] = participant_id;
  j["mode"] = std::string(orclsim::to_string(mode));
  j["speed"] = speed;
  j["start_arclength"] = start_arclength;
  j["duration"] = duration ? ojson(*duration) : ojson(nullptr);
  j["hr_baseline"] = hr_baseline;
  j["hr_noise"] = hr_noise;
  ojson shifts = ojson::array();
  for (const auto& s : hr_shifts) {
    ojson o;
    o["intersection"] = s.intersection ? ojson(*s.intersection) : ojson(nullptr);
    o["offset"] = s.offset;
    o["delta"] = s.delta;
    shifts.push_back(std::move(o));
  }
  j["hr_shifts"] = std::move(shifts);
  ojson episodes = ojson::array();
  for (const auto& e : scan_episodes) {
    episodes.push_back(ojson{{"start", e.start}, {"duration", e.duration}, {"spread", e.spread}});
  }
  j["scan_episodes"] = std::move(episodes);
  j["gaze_jitter_deg"] = gaze_jitter_deg;
  j["scan_dwell"] = scan_dwell;
  j["gaze_dropout"] = gaze_dropout;
  j["headway_gaps"] = headway_gaps;
  j["vehicle_speed"] = vehicle_speed;
  j["vehicle_lane_offset"] = vehicle_lane_offset;
  j["timestamp_jitter"] = timestamp_jitter;
  j["watch_epoch"] = watch_epoch;
  j["auto_annotations"] = auto_annotations;
  ojson notes = ojson::array();
  for (const auto& a : annotations) {
    notes.push_back(ojson{{"time", a.time},
                          {"category", std::string(orclsim::to_string(a.category))},
                          {"label", a.label}});
  }
  j["annotations"] = std::move(notes);
  j["seed"] = seed;
  return j;
}

ojson GroundTruthManifest::to_json() const {
  ojson j;
  j["seed"] = seed;
  ojson shifts = ojson::array();
  for (const auto& s : hr_shifts) {
    ojson o;
    o["arclength"] = s.arclength;
    o["delta"] = s.delta;
    o["time"] = s.time;
    o["intersection"] = s.intersection ? ojson(*s.intersection) : ojson(nullptr);
    o["offset"] = s.offset;
    shifts.push_back(std::move(o));
  }
  j["hr_shifts"] = std::move(shifts);
  ojson scans = ojson::array();
  for (const auto& s : scan_episodes) {
    ojson bins = ojson::array();
    for (const auto& b : s.bins) bins.push_back(ojson::array({b.col, b.row}));
    scans.push_back(ojson{{"start", s.start},
                          {"duration", s.duration},
                          {"spread", s.spread},
                          {"bins", std::move(bins)}});
  }
  j["scan_episodes"] = std::move(scans);
  j["headways"] = headways;
  ojson vehicles_json = ojson::array();
  for (const auto& v : vehicles) {
    vehicles_json.push_back(ojson{
        {"vehicle_id", v.vehicle_id}, {"model_class", v.model_class}, {"spawn_time", v.spawn_time}});
  }
  j["vehicles"] = std::move(vehicles_json);
  return j;
}

std::vector<double> default_headway_gaps() {
  // Synthetic sample; not observed traffic.
  return {2.4, 3.1, 3.1, 3.8, 4.2, 4.6, 5.0, 5.0, 5.5, 6.1,
          6.7, 7.2, 7.9, 8.4, 9.0, 9.9, 11.3, 12.8, 14.5, 17.0};
}

GeneratedSession generate_session(const Scenario& sc, const RoadNetwork& network,
                                  const CameraModel& camera) {
  if (network.empty()) throw ConfigError("generate_session: road network is empty");
  camera.validate();
  if (!(sc.speed > 0.0 && std::isfinite(sc.speed))) {
    throw ArgumentError("scenario: speed must be positive");
  }
  const double length = network.length();
  if (!(sc.start_arclength >= 0.0 && sc.start_arclength <= length)) {
    throw ArgumentError("scenario: start_arclength outside the corridor");
  }
  const double duration = sc.duration.value_or((length - sc.start_arclength) / sc.speed);
  if (!(duration >= 0.0 && std::isfinite(duration))) {
    throw ArgumentError("scenario: duration must be non-negative");
  }
  if (!(sc.hr_noise >= 0.0) || !(sc.gaze_jitter_deg >= 0.0)) {
    throw ArgumentError("scenario: noise levels must be non-negative");
  }
  if (!(sc.gaze_dropout >= 0.0 && sc.gaze_dropout < 1.0)) {
    throw ArgumentError("scenario: gaze_dropout must be in [0, 1)");
  }
  if (!(sc.timestamp_jitter >= 0.0 && sc.timestamp_jitter < 0.5 / kGazeRate)) {
    throw ArgumentError("scenario: timestamp_jitter must be below half a gaze period");
  }
  if (!(sc.scan_dwell > 0.0)) throw ArgumentError("scenario: scan_dwell must be positive");
  if (!(sc.vehicle_speed > 0.0)) throw ArgumentError("scenario: vehicle_speed must be positive");

  const auto arclength_at = [&](double t) {
    return std::min(sc.start_arclength + sc.speed * t, length);
  };

  GeneratedSession out;
  auto& session = out.session;
  auto& manifest = out.manifest;
  manifest.seed = sc.seed;
  session.session_id = sc.session_id;
  session.participant_id = sc.participant_id;
  session.mode = sc.mode;
  session.road_network_ref = "road.road";

  // HR shifts in time order.
  for (const auto& shift : sc.hr_shifts) {
    InjectedShift inj;
    inj.delta = shift.delta;
    inj.offset = shift.offset;
    inj.intersection = shift.intersection;
    inj.arclength = shift.intersection
                        ? network.intersection(*shift.intersection).arclength + shift.offset
                        : shift.offset;
    if (!(inj.arclength >= 0.0 && inj.arclength <= length)) {
      throw ArgumentError("scenario: HR shift at arclength " + format_double(inj.arclength) +
                          " lies outside the corridor");
    }
    inj.time = (inj.arclength - sc.start_arclength) / sc.speed;
    if (inj.time < 0.0 || inj.time >= duration) {
      throw ArgumentError("scenario: HR shift at arclength " + format_double(inj.arclength) +
                          " is not reached during the run");
    }
    manifest.hr_shifts.push_back(inj);
  }
  std::stable_sort(manifest.hr_shifts.begin(), manifest.hr_shifts.end(),
                   [](const InjectedShift& a, const InjectedShift& b) { return a.time < b.time; });

  auto jitter_rng = make_engine(sc.seed, kStreamJitter);

  // Pose and vehicles share the 30 Hz engine tick.
  const std::size_t pose_n = sample_count(duration, kPoseRate);
  SampleStream<PoseSample> pose{StreamKind::pose, kPoseRate, 0.0, {}};
  SampleStream<VehicleFrame> vehicle{StreamKind::vehicle, kPoseRate, 0.0, {}};
  pose.samples.reserve(pose_n);

  const EmpiricalCdf cdf = EmpiricalCdf::fit(
      sc.headway_gaps.empty() ? default_headway_gaps() : sc.headway_gaps);
  {
    auto headway_rng = make_engine(sc.seed, kStreamHeadways);
    auto model_rng = make_engine(sc.seed, kStreamModels);
    double spawn = 0.0;
    while (true) {
      const double gap = cdf.quantile(unit_uniform(headway_rng));
      if (spawn + gap >= duration) break;
      spawn += gap;
      manifest.headways.push_back(gap);
      manifest.vehicles.push_back({static_cast<int>(manifest.vehicles.size()) + 1,
                                   static_cast<int>(uniform_index(model_rng, kVehicleModels)),
                                   spawn});
    }
  }

  for (std::size_t k = 0; k < pose_n; ++k) {
    const double t_nominal = static_cast<double>(k) / kPoseRate;
    const double t = jittered(t_nominal, sc.timestamp_jitter, jitter_rng);
    const double s = arclength_at(t_nominal);
    PoseSample p;
    p.head_position = network.point_at(s) + Vec3{0.0, eye_height(sc.mode), 0.0};
    p.head_forward = network.direction_at(s);
    p.speed = s < length ? sc.speed : 0.0;
    pose.samples.push_back({{t}, p});

    VehicleFrame frame;
    for (const auto& v : manifest.vehicles) {
      if (v.spawn_time > t_nominal) continue;
      const double sv = length - sc.vehicle_speed * (t_nominal - v.spawn_time);
      if (sv < 0.0) continue;
      VehicleState state;
      state.vehicle_id = v.vehicle_id;
      state.model_class = v.model_class;
      state.position = network.point_at(sv, sc.vehicle_lane_offset);
      state.forward = -1.0 * network.direction_at(sv);
      state.speed = sc.vehicle_speed;
      frame.vehicles.push_back(state);
    }
    if (!frame.vehicles.empty()) vehicle.samples.push_back({{t}, std::move(frame)});
  }

  // Scan episodes: distinct on-screen bins away from the straight-ahead bin.
  {
    auto scan_rng = make_engine(sc.seed, kStreamScan);
    const ScreenGazePoint centre = project_direction({0.0, 0.0, 1.0}, camera);
    const BinId centre_bin = spatial_bin(centre, kBinSize);
    std::vector<BinId> pool;
    const int cols = static_cast<int>(std::floor(camera.image_width / kBinSize));
    const int rows = static_cast<int>(std::floor(camera.image_height / kBinSize));
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) {
        if (BinId{c, r} != centre_bin) pool.push_back({c, r});
      }
    }
    for (const auto& ep : sc.scan_episodes) {
      if (!(ep.start >= 0.0 && ep.duration > 0.0)) {
        throw ArgumentError("scenario: scan episodes need start >= 0 and duration > 0");
      }
      if (ep.spread < 2 || static_cast<std::size_t>(ep.spread) > pool.size()) {
        throw ArgumentError("scenario: scan spread must be between 2 and " +
                            std::to_string(pool.size()));
      }
      InjectedScan scan{ep.start, ep.duration, ep.spread, {}};
      for (int i = 0; i < ep.spread; ++i) {
        const auto j = static_cast<std::size_t>(i) +
                       uniform_index(scan_rng, pool.size() - static_cast<std::size_t>(i));
        std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
        scan.bins.push_back(pool[static_cast<std::size_t>(i)]);
      }
      manifest.scan_episodes.push_back(std::move(scan));
    }
  }

  {
    auto gaze_rng = make_engine(sc.seed, kStreamGaze);
    auto dropout_rng = make_engine(sc.seed, kStreamDropout);
    const std::size_t n = sample_count(duration, kGazeRate);
    SampleStream<GazeSample> gaze{StreamKind::gaze, kGazeRate, 0.0, {}};
    gaze.samples.reserve(n);
    const double jitter_rad = sc.gaze_jitter_deg * std::numbers::pi / 180.0;
    // Pixel jitter inside a scan bin, kept well inside the bin.
    const double jitter_px = std::min(30.0, sc.gaze_jitter_deg * 10.0);
    for (std::size_t k = 0; k < n; ++k) {
      const double t_nominal = static_cast<double>(k) / kGazeRate;
      const double t = jittered(t_nominal, sc.timestamp_jitter, jitter_rng);
      Vec3 dir{0.0, 0.0, 1.0};
      const InjectedScan* active = nullptr;
      for (const auto& scan : manifest.scan_episodes) {
        if (t_nominal >= scan.start && t_nominal < scan.start + scan.duration) active = &scan;
      }
      if (active) {
        const auto hop = static_cast<std::size_t>(std::floor((t_nominal - active->start) / sc.scan_dwell));
        const BinId bin = active->bins[hop % active->bins.size()];
        double x = (bin.col + 0.5) * kBinSize;
        double y = (bin.row + 0.5) * kBinSize;
        if (jitter_px > 0.0) {
          x += std::clamp(jitter_px * standard_normal(gaze_rng), -40.0, 40.0);
          y += std::clamp(jitter_px * standard_normal(gaze_rng), -40.0, 40.0);
        }
        dir = unproject(x, y, camera);
      } else if (jitter_rad > 0.0) {
        const double yaw = std::clamp(jitter_rad * standard_normal(gaze_rng), -0.1, 0.1);
        const double pitch = std::clamp(jitter_rad * standard_normal(gaze_rng), -0.1, 0.1);
        dir = normalized({std::tan(yaw), std::tan(pitch), 1.0});
      }
      GazeSample g;
      const double pupil = 3.5 + 0.2 * std::sin(0.1 * t_nominal);
      g.left = {dir, pupil, true};
      g.right = {dir, pupil, true};
      if (sc.gaze_dropout > 0.0) {
        if (unit_uniform(dropout_rng) < sc.gaze_dropout) g.left = {};
        if (unit_uniform(dropout_rng) < sc.gaze_dropout) g.right = {};
      }
      gaze.samples.push_back({{t}, g});
    }
    session.gaze = std::move(gaze);
  }

  {
    auto hr_rng = make_engine(sc.seed, kStreamHr);
    const std::size_t n = sample_count(duration, kHrRate);
    SampleStream<HrSample> hr{StreamKind::heart_rate, kHrRate, 0.0, {}};
    for (std::size_t k = 0; k < n; ++k) {
      const double t_nominal = static_cast<double>(k) / kHrRate;
      double bpm = sc.hr_baseline;
      for (const auto& s : manifest.hr_shifts) {
        if (t_nominal >= s.time) bpm += s.delta;
      }
      if (sc.hr_noise > 0.0) bpm += sc.hr_noise * standard_normal(hr_rng);
      hr.samples.push_back({{sc.watch_epoch + jittered(t_nominal, sc.timestamp_jitter, jitter_rng)},
                            {bpm}});
    }
    session.heart_rate = std::move(hr);
  }

  {
    auto motion_rng = make_engine(sc.seed, kStreamMotion);
    const std::size_t n = sample_count(duration, kMotionRate);
    SampleStream<MotionSample> motion{StreamKind::motion, kMotionRate, 0.0, {}};
    const std::size_t audio_every = static_cast<std::size_t>(60.0 * kMotionRate);
    for (std::size_t k = 0; k < n; ++k) {
      const double t_nominal = static_cast<double>(k) / kMotionRate;
      MotionSample m;
      const double a = sc.mode == Mode::bicyclist ? 0.6 : 0.9;
      m.acceleration = Vec3{a * std::sin(2.0 * t_nominal) + 0.05 * standard_normal(motion_rng),
                            -kGravity + 0.05 * standard_normal(motion_rng),
                            0.05 * standard_normal(motion_rng)};
      m.gyroscope = Vec3{0.02 * standard_normal(motion_rng), 0.02 * standard_normal(motion_rng),
                         0.02 * standard_normal(motion_rng)};
      if (k % audio_every == 0) m.audio_amplitude = 55.0 + 3.0 * unit_uniform(motion_rng);
      motion.samples.push_back(
          {{sc.watch_epoch + jittered(t_nominal, sc.timestamp_jitter, jitter_rng)}, m});
    }
    session.motion = std::move(motion);
  }

  std::vector<AnnotationEvent> notes;
  if (sc.auto_annotations) {
    const double end_s = arclength_at(duration);
    for (const auto& inter : network.intersections()) {
      const double mark = inter.arclength - kApproachDistance;
      if (mark < sc.start_arclength || mark > end_s) continue;
      notes.push_back({{(mark - sc.start_arclength) / sc.speed},
                       AnnotationCategory::intersection_approach,
                       "approaching " + inter.name});
    }
  }
  for (const auto& a : sc.annotations) notes.push_back({{a.time}, a.category, a.label});
  std::stable_sort(notes.begin(), notes.end(),
                   [](const AnnotationEvent& x, const AnnotationEvent& y) { return x.timestamp < y.timestamp; });

  session.pose = std::move(pose);
  session.vehicle = std::move(vehicle);
  session.annotations = std::move(notes);
  return out;
}

void write_session_files(const GeneratedSession& generated, const Scenario& scenario,
                         const RoadNetwork& network, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());
  const auto& s = generated.session;
  const SampleStream<PoseSample> no_pose{StreamKind::pose, kPoseRate, 0.0, {}};
  const SampleStream<GazeSample> no_gaze{StreamKind::gaze, kGazeRate, 0.0, {}};
  const SampleStream<HrSample> no_hr{StreamKind::heart_rate, kHrRate, 0.0, {}};
  write_text_file((dir / "pose.csv").string(),
                  serialize_pose_log(s.pose ? *s.pose : no_pose, s.vehicle ? &*s.vehicle : nullptr));
  write_text_file((dir / "gaze.csv").string(), serialize_gaze_log(s.gaze ? *s.gaze : no_gaze));
  write_text_file((dir / "watch.csv").string(),
                  serialize_watch_log(s.heart_rate ? *s.heart_rate : no_hr,
                                      s.motion ? &*s.motion : nullptr));
  write_text_file((dir / "annotations.csv").string(),
                  serialize_annotations(s.annotations ? *s.annotations : std::vector<AnnotationEvent>{}));
  write_text_file((dir / "road.road").string(), network.serialize());

  ojson manifest;
  manifest["scenario"] = scenario.to_json();
  manifest["ground_truth"] = generated.manifest.to_json();
  write_text_file((dir / "manifest.json").string(), manifest.dump(2) + "\n");

  std::string cfg = "# Analysis configuration for a generated session.\n";
  cfg += "session_id = " + s.session_id + "\n";
  cfg += "participant_id = " + s.participant_id + "\n";
  cfg += "mode = " + std::string(to_string(s.mode)) + "\n";
  cfg += "road_network = road.road\n";
  cfg += "pose_log = pose.csv\n";
  cfg += "gaze_log = gaze.csv\n";
  cfg += "watch_log = watch.csv\n";
  cfg += "annotations = annotations.csv\n";
  if (scenario.watch_epoch != 0.0) {
    cfg += "offset.heart_rate = " + format_double(-scenario.watch_epoch) + "\n";
    cfg += "offset.motion = " + format_double(-scenario.watch_epoch) + "\n";
  }
  cfg += "seed = " + std::to_string(scenario.seed) + "\n";
  cfg += "output = report\n";
  write_text_file((dir / "analyze.cfg").string(), cfg);
}

std::string bundled_scenario_path() {
  if (const char* dir = std::getenv("ORCLSIM_DATA_DIR")) return std::string(dir) + "/default.scenario";
  return std::string(ORCLSIM_DATA_DIR) + "/default.scenario";
}

}  // namespace orclsim
