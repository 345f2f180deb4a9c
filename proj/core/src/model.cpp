#include "orclsim/model.hpp"

#include <array>
#include <utility>

namespace orclsim {

namespace {

constexpr std::array<std::pair<StreamKind, std::string_view>, 6> kStreamNames{{
    {StreamKind::pose, "pose"},
    {StreamKind::gaze, "gaze"},
    {StreamKind::heart_rate, "heart_rate"},
    {StreamKind::motion, "motion"},
    {StreamKind::vehicle, "vehicle"},
    {StreamKind::annotation, "annotation"},
}};

constexpr std::array<std::pair<AnnotationCategory, std::string_view>, 5> kCategoryNames{{
    {AnnotationCategory::vehicle_interaction, "vehicle_interaction"},
    {AnnotationCategory::intersection_approach, "intersection_approach"},
    {AnnotationCategory::crossing_start, "crossing_start"},
    {AnnotationCategory::crossing_in_lane, "crossing_in_lane"},
    {AnnotationCategory::other, "other"},
}};

template <class T>
void shift_and_dedupe(std::optional<SampleStream<T>>& stream, double offset) {
  if (!stream || stream->samples.empty()) {
    if (stream) stream->clock_offset += offset;
    return;
  }
  auto& samples = stream->samples;
  for (auto& s : samples) s.t = s.t + offset;
  std::stable_sort(samples.begin(), samples.end(),
                   [](const auto& a, const auto& b) { return a.t < b.t; });
  // Keep the last sample of each equal-timestamp run (stable sort keeps file order).
  std::vector<TimedSample<T>> kept;
  kept.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (i + 1 < samples.size() && samples[i + 1].t == samples[i].t) continue;
    kept.push_back(std::move(samples[i]));
  }
  samples = std::move(kept);
  stream->clock_offset += offset;
}

}  // namespace

std::string_view to_string(StreamKind kind) {
  for (const auto& [k, name] : kStreamNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<StreamKind> parse_stream_kind(std::string_view name) {
  for (const auto& [k, n] : kStreamNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

std::string_view to_string(Mode mode) {
  return mode == Mode::bicyclist ? "bicyclist" : "pedestrian";
}

std::optional<Mode> parse_mode(std::string_view name) {
  if (name == "bicyclist") return Mode::bicyclist;
  if (name == "pedestrian") return Mode::pedestrian;
  return std::nullopt;
}

std::string_view to_string(AnnotationCategory category) {
  for (const auto& [c, name] : kCategoryNames) {
    if (c == category) return name;
  }
  return "other";
}

AnnotationCategory parse_annotation_category(std::string_view token) {
  for (const auto& [c, name] : kCategoryNames) {
    if (name == token) return c;
  }
  return AnnotationCategory::other;
}

bool SessionRecording::has(StreamKind kind) const {
  switch (kind) {
    case StreamKind::pose: return pose.has_value();
    case StreamKind::gaze: return gaze.has_value();
    case StreamKind::heart_rate: return heart_rate.has_value();
    case StreamKind::motion: return motion.has_value();
    case StreamKind::vehicle: return vehicle.has_value();
    case StreamKind::annotation: return annotations.has_value();
  }
  return false;
}

SessionRecording synchronize(const SessionRecording& session, const ClockOffsets& offsets) {
  std::map<StreamKind, double> by_kind;
  for (const auto& [name, offset] : offsets) {
    const auto kind = parse_stream_kind(name);
    if (!kind) throw ConfigError("clock offset names unknown stream '" + name + "'");
    if (!session.has(*kind)) {
      throw ConfigError("clock offset names stream '" + name + "' which is not in the session");
    }
    if (!std::isfinite(offset)) throw ConfigError("clock offset for '" + name + "' is not finite");
    by_kind[*kind] = offset;
  }
  const auto offset_of = [&](StreamKind k) {
    const auto it = by_kind.find(k);
    return it == by_kind.end() ? 0.0 : it->second;
  };

  SessionRecording out = session;
  shift_and_dedupe(out.pose, offset_of(StreamKind::pose));
  shift_and_dedupe(out.gaze, offset_of(StreamKind::gaze));
  shift_and_dedupe(out.heart_rate, offset_of(StreamKind::heart_rate));
  shift_and_dedupe(out.motion, offset_of(StreamKind::motion));
  shift_and_dedupe(out.vehicle, offset_of(StreamKind::vehicle));
  if (out.annotations) {
    const double dt = offset_of(StreamKind::annotation);
    for (auto& a : *out.annotations) a.timestamp = a.timestamp + dt;
    std::stable_sort(out.annotations->begin(), out.annotations->end(),
                     [](const auto& a, const auto& b) { return a.timestamp < b.timestamp; });
  }
  return out;
}

}  // namespace orclsim
