#pragma once

// Domain types shared by every stage of the pipeline: the session clock,
// multi-rate sample streams, typed payloads and the session bundle.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "orclsim/errors.hpp"

namespace orclsim {

/// Fractional seconds since the session epoch.
struct Timestamp {
  double seconds = 0.0;

  constexpr auto operator<=>(const Timestamp&) const = default;
};

constexpr Timestamp operator+(Timestamp t, double dt) { return {t.seconds + dt}; }
constexpr double operator-(Timestamp a, Timestamp b) { return a.seconds - b.seconds; }

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr bool operator==(const Vec3&) const = default;
};

constexpr Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
constexpr Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
constexpr Vec3 operator*(double s, Vec3 v) { return {s * v.x, s * v.y, s * v.z}; }
constexpr double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(Vec3 v) { return std::sqrt(dot(v, v)); }
inline bool is_finite(Vec3 v) {
  return std::isfinite(v.x) && std::isfinite(v.y) && std::isfinite(v.z);
}
inline bool is_unit(Vec3 v, double tol = 1e-6) { return std::abs(norm(v) - 1.0) <= tol; }
inline Vec3 normalized(Vec3 v) { return (1.0 / norm(v)) * v; }

enum class StreamKind { pose, gaze, heart_rate, motion, vehicle, annotation };

std::string_view to_string(StreamKind kind);
std::optional<StreamKind> parse_stream_kind(std::string_view name);

enum class Mode { bicyclist, pedestrian };

std::string_view to_string(Mode mode);
std::optional<Mode> parse_mode(std::string_view name);

/// Headset pose from the engine log. Unity convention: y up, z forward, x right.
struct PoseSample {
  Vec3 head_position;
  Vec3 head_forward{0.0, 0.0, 1.0};
  double controller_trigger = 0.0;  // brake, [0, 1]
  double speed = 0.0;               // m/s

  bool operator==(const PoseSample&) const = default;
};

struct VehicleState {
  int vehicle_id = 0;
  int model_class = 0;
  Vec3 position;
  Vec3 forward{0.0, 0.0, 1.0};
  double speed = 0.0;

  bool operator==(const VehicleState&) const = default;
};

/// All vehicles logged at one engine tick.
struct VehicleFrame {
  std::vector<VehicleState> vehicles;

  bool operator==(const VehicleFrame&) const = default;
};

struct EyeSample {
  Vec3 direction{0.0, 0.0, 1.0};
  double pupil_diameter_mm = 0.0;
  bool valid = false;

  bool operator==(const EyeSample&) const = default;
};

/// Raw eye-tracker sample; directions are in the head frame.
struct GazeSample {
  Vec3 origin;
  EyeSample left;
  EyeSample right;

  bool operator==(const GazeSample&) const = default;
};

inline constexpr double kMinPlausibleBpm = 20.0;
inline constexpr double kMaxPlausibleBpm = 250.0;

struct HrSample {
  double bpm = 0.0;

  bool plausible() const { return bpm >= kMinPlausibleBpm && bpm <= kMaxPlausibleBpm; }
  bool operator==(const HrSample&) const = default;
};

/// Smartwatch motion tick. Accelerometer, gyroscope and audio records that
/// share a timestamp are merged into one sample.
struct MotionSample {
  std::optional<Vec3> acceleration;  // m/s^2
  std::optional<Vec3> gyroscope;     // rad/s
  std::optional<double> audio_amplitude;

  bool operator==(const MotionSample&) const = default;
};

enum class AnnotationCategory {
  vehicle_interaction,
  intersection_approach,
  crossing_start,
  crossing_in_lane,
  other
};

std::string_view to_string(AnnotationCategory category);
/// Unknown tokens map to `other`.
AnnotationCategory parse_annotation_category(std::string_view token);

struct AnnotationEvent {
  Timestamp timestamp;
  AnnotationCategory category = AnnotationCategory::other;
  std::string label;

  bool operator==(const AnnotationEvent&) const = default;
};

template <class T>
struct TimedSample {
  Timestamp t;
  T value;

  bool operator==(const TimedSample&) const = default;
};

template <class T>
struct SampleStream {
  using value_type = T;

  StreamKind kind = StreamKind::pose;
  double nominal_rate = 1.0;  // Hz
  double clock_offset = 0.0;  // seconds already applied by synchronize
  std::vector<TimedSample<T>> samples;

  bool empty() const { return samples.empty(); }
  std::size_t size() const { return samples.size(); }

  bool operator==(const SampleStream&) const = default;
};

/// True when timestamps are finite and strictly increasing and the rate is positive.
template <class T>
bool is_well_formed(const SampleStream<T>& stream) {
  if (!(stream.nominal_rate > 0.0)) return false;
  for (std::size_t i = 0; i < stream.samples.size(); ++i) {
    if (!std::isfinite(stream.samples[i].t.seconds)) return false;
    if (i > 0 && !(stream.samples[i - 1].t < stream.samples[i].t)) return false;
  }
  return true;
}

struct SessionRecording {
  std::string session_id;
  std::string participant_id;
  Mode mode = Mode::bicyclist;
  std::string road_network_ref;

  std::optional<SampleStream<PoseSample>> pose;
  std::optional<SampleStream<GazeSample>> gaze;
  std::optional<SampleStream<HrSample>> heart_rate;
  std::optional<SampleStream<MotionSample>> motion;
  std::optional<SampleStream<VehicleFrame>> vehicle;
  std::optional<std::vector<AnnotationEvent>> annotations;

  bool has(StreamKind kind) const;
  bool operator==(const SessionRecording&) const = default;
};

/// Per-source clock corrections in seconds, keyed by stream kind name.
using ClockOffsets = std::map<std::string, double, std::less<>>;

/// Shifts each named stream by its offset, re-sorts, and collapses duplicate
/// timestamps to the sample that came last in file order.
/// Throws ConfigError when an offset names an unknown or absent stream.
SessionRecording synchronize(const SessionRecording& session, const ClockOffsets& offsets);

namespace detail {
template <class T>
struct HeldValue {
  using type = std::optional<T>;
  static type wrap(const T& v) { return v; }
};
template <class U>
struct HeldValue<std::optional<U>> {
  using type = std::optional<U>;
  static type wrap(const std::optional<U>& v) { return v; }
};
}  // namespace detail

template <class T>
using HeldStream = SampleStream<typename detail::HeldValue<T>::type>;

/// Zero-order hold onto `timeline`. Points before the first sample (or any
/// point when the stream is empty) carry std::nullopt as a gap marker.
/// Holding an already-held stream onto the same timeline is the identity.
template <class T>
HeldStream<T> resample_hold(const SampleStream<T>& stream, std::span<const Timestamp> timeline) {
  if (!std::is_sorted(timeline.begin(), timeline.end())) {
    throw ArgumentError("resample_hold: timeline must be sorted");
  }
  HeldStream<T> out;
  out.kind = stream.kind;
  out.nominal_rate = stream.nominal_rate;
  out.clock_offset = stream.clock_offset;
  out.samples.reserve(timeline.size());
  std::size_t next = 0;  // first sample with t > query
  for (const Timestamp q : timeline) {
    while (next < stream.samples.size() && stream.samples[next].t <= q) ++next;
    if (next == 0) {
      out.samples.push_back({q, std::nullopt});
    } else {
      out.samples.push_back({q, detail::HeldValue<T>::wrap(stream.samples[next - 1].value)});
    }
  }
  return out;
}

/// Samples with t0 <= t < t1, order preserved. Throws ArgumentError when t0 > t1.
template <class T>
SampleStream<T> window_slice(const SampleStream<T>& stream, Timestamp t0, Timestamp t1) {
  if (t1 < t0) throw ArgumentError("window_slice: t0 must not exceed t1");
  const auto by_time = [](const TimedSample<T>& s, Timestamp t) { return s.t < t; };
  const auto first = std::lower_bound(stream.samples.begin(), stream.samples.end(), t0, by_time);
  const auto last = std::lower_bound(first, stream.samples.end(), t1, by_time);
  SampleStream<T> out;
  out.kind = stream.kind;
  out.nominal_rate = stream.nominal_rate;
  out.clock_offset = stream.clock_offset;
  out.samples.assign(first, last);
  return out;
}

/// Index range [first, last) of samples with t0 <= t < t1.
template <class T>
std::pair<std::size_t, std::size_t> window_bounds(const SampleStream<T>& stream, Timestamp t0,
                                                  Timestamp t1) {
  const auto by_time = [](const TimedSample<T>& s, Timestamp t) { return s.t < t; };
  const auto first = std::lower_bound(stream.samples.begin(), stream.samples.end(), t0, by_time);
  const auto last = std::lower_bound(first, stream.samples.end(), t1, by_time);
  return {static_cast<std::size_t>(first - stream.samples.begin()),
          static_cast<std::size_t>(last - stream.samples.begin())};
}

template <class T>
std::vector<Timestamp> timestamps_of(const SampleStream<T>& stream) {
  std::vector<Timestamp> out;
  out.reserve(stream.samples.size());
  for (const auto& s : stream.samples) out.push_back(s.t);
  return out;
}

}  // namespace orclsim
