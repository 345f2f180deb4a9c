#include "orclsim/spatial.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "orclsim/errors.hpp"
#include "orclsim/ingest.hpp"
#include "orclsim/keyvalue.hpp"

namespace orclsim {

namespace {

constexpr double kTilingTolerance = 1e-3;  // m
constexpr double kMinGrade = -10.0;
constexpr double kMaxGrade = 20.0;

double plan_length(Vec3 a, Vec3 b) { return std::hypot(b.x - a.x, b.z - a.z); }

std::string location_of(const std::string& source, std::size_t line) {
  return source + ":" + std::to_string(line) + ": ";
}

}  // namespace

RoadNetwork::RoadNetwork(std::vector<Vec3> centerline, std::vector<RoadSegment> segments,
                         std::vector<Intersection> intersections)
    : centerline_(std::move(centerline)),
      segments_(std::move(segments)),
      intersections_(std::move(intersections)) {
  if (centerline_.size() < 2) throw ConfigError("road network needs at least two vertices");
  vertex_arclength_.assign(1, 0.0);
  for (std::size_t i = 0; i + 1 < centerline_.size(); ++i) {
    const Vec3 a = centerline_[i];
    const Vec3 b = centerline_[i + 1];
    if (!is_finite(a) || !is_finite(b)) throw ConfigError("road network has a non-finite vertex");
    if (!(plan_length(a, b) > 0.0)) {
      throw ConfigError("road network edge " + std::to_string(i) + " has no horizontal extent");
    }
    vertex_arclength_.push_back(vertex_arclength_.back() + norm(b - a));
  }

  if (segments_.empty()) throw ConfigError("road network has no segments");
  double expected = 0.0;
  for (const auto& seg : segments_) {
    if (std::abs(seg.start - expected) > kTilingTolerance) {
      throw ConfigError("segment " + seg.name + " does not start where the previous one ends");
    }
    if (!(seg.end > seg.start)) throw ConfigError("segment " + seg.name + " is empty");
    if (!(seg.grade >= kMinGrade && seg.grade <= kMaxGrade)) {
      throw ConfigError("segment " + seg.name + " grade outside [-10, 20] percent");
    }
    expected = seg.end;
  }
  if (std::abs(expected - length()) > kTilingTolerance) {
    throw ConfigError("segments cover " + format_double(expected) + " m but the centerline is " +
                      format_double(length()) + " m long");
  }

  double previous = -std::numeric_limits<double>::infinity();
  for (const auto& inter : intersections_) {
    if (!(inter.arclength > previous)) {
      throw ConfigError("intersection arclengths must be strictly increasing");
    }
    if (inter.arclength < 0.0 || inter.arclength > length() + kTilingTolerance) {
      throw ConfigError("intersection " + inter.name + " lies outside the corridor");
    }
    previous = inter.arclength;
  }
}

RoadNetwork RoadNetwork::parse(std::string_view text, const std::string& source) {
  std::vector<Vec3> vertices;
  std::vector<RoadSegment> segments;
  std::vector<Intersection> intersections;
  bool header_seen = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    const std::string_view line = trim(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split_whitespace(line);
    if (!header_seen) {
      if (fields.size() != 2 || fields[0] != "orcl-road" || fields[1] != "v1") {
        throw FormatError(source, line_no, "expected header 'orcl-road v1'");
      }
      header_seen = true;
      continue;
    }
    const auto number = [&](std::size_t i) {
      const auto v = parse_double(fields[i]);
      if (!v || !std::isfinite(*v)) {
        throw FormatError(source, line_no, "bad number '" + std::string(fields[i]) + "'");
      }
      return *v;
    };
    const auto expect = [&](std::size_t n) {
      if (fields.size() != n) {
        throw FormatError(source, line_no,
                          "'" + std::string(fields[0]) + "' takes " + std::to_string(n - 1) +
                              " fields");
      }
    };
    if (fields[0] == "V") {
      expect(4);
      vertices.push_back({number(1), number(2), number(3)});
    } else if (fields[0] == "S") {
      expect(5);
      segments.push_back({std::string(fields[1]), number(2), number(3), number(4)});
    } else if (fields[0] == "I") {
      expect(3);
      intersections.push_back({std::string(fields[1]), number(2)});
    } else {
      throw FormatError(source, line_no, "unknown record '" + std::string(fields[0]) + "'");
    }
  }
  if (!header_seen) throw FormatError(source, 1, "expected header 'orcl-road v1'");
  try {
    return RoadNetwork(std::move(vertices), std::move(segments), std::move(intersections));
  } catch (const ConfigError& e) {
    throw ConfigError(location_of(source, line_no) + e.what());
  }
}

RoadNetwork RoadNetwork::load(const std::string& path) { return parse(read_text_file(path), path); }

std::string RoadNetwork::serialize() const {
  std::ostringstream out;
  out << "orcl-road v1\n";
  for (const auto& v : centerline_) {
    out << "V " << format_double(v.x) << ' ' << format_double(v.y) << ' ' << format_double(v.z)
        << '\n';
  }
  for (const auto& s : segments_) {
    out << "S " << s.name << ' ' << format_double(s.start) << ' ' << format_double(s.end) << ' '
        << format_double(s.grade) << '\n';
  }
  for (const auto& i : intersections_) {
    out << "I " << i.name << ' ' << format_double(i.arclength) << '\n';
  }
  return out.str();
}

SegmentLocation RoadNetwork::locate(Vec3 position) const {
  if (empty()) throw ConfigError("locate: road network is empty");
  std::size_t best_edge = 0;
  double best_t = 0.0;
  double best_raw_t = 0.0;
  double best_dist2 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < centerline_.size(); ++i) {
    const Vec3 a = centerline_[i];
    const Vec3 b = centerline_[i + 1];
    const double hx = b.x - a.x;
    const double hz = b.z - a.z;
    const double raw_t = ((position.x - a.x) * hx + (position.z - a.z) * hz) / (hx * hx + hz * hz);
    const double t = std::clamp(raw_t, 0.0, 1.0);
    const double dx = position.x - (a.x + t * hx);
    const double dz = position.z - (a.z + t * hz);
    const double d2 = dx * dx + dz * dz;
    if (d2 < best_dist2) {
      best_dist2 = d2;
      best_edge = i;
      best_t = t;
      best_raw_t = raw_t;
    }
  }
  const Vec3 a = centerline_[best_edge];
  const Vec3 b = centerline_[best_edge + 1];
  const double hx = b.x - a.x;
  const double hz = b.z - a.z;
  const double h = std::hypot(hx, hz);

  SegmentLocation loc;
  loc.out_of_corridor = (best_edge == 0 && best_raw_t < 0.0) ||
                        (best_edge + 2 == centerline_.size() && best_raw_t > 1.0);
  const double edge_len = vertex_arclength_[best_edge + 1] - vertex_arclength_[best_edge];
  loc.arclength = best_t == 1.0 ? vertex_arclength_[best_edge + 1]
                                : vertex_arclength_[best_edge] + best_t * edge_len;
  // Right of travel in plan view is (hz, -hx) / h.
  const double px = position.x - (a.x + best_t * hx);
  const double pz = position.z - (a.z + best_t * hz);
  loc.lateral_offset = (px * hz - pz * hx) / h;
  loc.segment_index = segment_index_at(loc.arclength);
  loc.segment_name = segments_[loc.segment_index].name;
  return loc;
}

std::size_t RoadNetwork::edge_at(double s) const {
  const auto it = std::upper_bound(vertex_arclength_.begin(), vertex_arclength_.end(), s);
  const std::size_t upper = static_cast<std::size_t>(it - vertex_arclength_.begin());
  return std::clamp<std::size_t>(upper == 0 ? 0 : upper - 1, 0, centerline_.size() - 2);
}

Vec3 RoadNetwork::point_at(double s, double lateral_offset) const {
  if (empty()) throw ConfigError("point_at: road network is empty");
  s = std::clamp(s, 0.0, length());
  const std::size_t i = edge_at(s);
  const Vec3 a = centerline_[i];
  const Vec3 b = centerline_[i + 1];
  const double t = (s - vertex_arclength_[i]) / (vertex_arclength_[i + 1] - vertex_arclength_[i]);
  const Vec3 on_line = a + t * (b - a);
  const double hx = b.x - a.x;
  const double hz = b.z - a.z;
  const double h = std::hypot(hx, hz);
  return on_line + lateral_offset * Vec3{hz / h, 0.0, -hx / h};
}

Vec3 RoadNetwork::direction_at(double s) const {
  if (empty()) throw ConfigError("direction_at: road network is empty");
  const std::size_t i = edge_at(std::clamp(s, 0.0, length()));
  return normalized(centerline_[i + 1] - centerline_[i]);
}

std::size_t RoadNetwork::segment_index_at(double s) const {
  for (std::size_t i = segments_.size(); i-- > 0;) {
    if (segments_[i].start <= s) return i;
  }
  return 0;
}

const Intersection& RoadNetwork::intersection(std::string_view name) const {
  for (const auto& i : intersections_) {
    if (i.name == name) return i;
  }
  throw ArgumentError("unknown intersection '" + std::string(name) + "'");
}

double signed_distance_to_intersection(const SegmentLocation& location, std::string_view name,
                                       const RoadNetwork& network) {
  return location.arclength - network.intersection(name).arclength;
}

std::optional<NearestIntersection> nearest_intersection(const SegmentLocation& location,
                                                        const RoadNetwork& network) {
  std::optional<NearestIntersection> best;
  for (const auto& i : network.intersections()) {
    const double d = location.arclength - i.arclength;
    if (!best || std::abs(d) < std::abs(best->signed_distance)) best = {i.name, d};
  }
  return best;
}

double grade_at(const SegmentLocation& location, const RoadNetwork& network) {
  if (location.out_of_corridor) throw ArgumentError("grade_at: location is outside the corridor");
  if (location.segment_index >= network.segments().size()) {
    throw ArgumentError("grade_at: location does not belong to this network");
  }
  return network.segments()[location.segment_index].grade;
}

std::string bundled_corridor_path() {
  if (const char* dir = std::getenv("ORCLSIM_DATA_DIR")) return std::string(dir) + "/corridor.road";
  return std::string(ORCLSIM_DATA_DIR) + "/corridor.road";
}

}  // namespace orclsim
