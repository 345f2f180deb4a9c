#pragma once

// Corridor geometry: a centerline polyline with named segments (each with a
// grade) and intersections, addressed by arclength along the direction of
// travel.
//
// Text format, whitespace-delimited, meters and percent:
//
//   orcl-road v1
//   V x y z            centerline vertex (world frame, y up)
//   S name s0 s1 grade segment covering arclength [s0, s1)
//   I name s           intersection at arclength s
//
// '#' starts a comment line.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "orclsim/model.hpp"

namespace orclsim {

struct RoadSegment {
  std::string name;
  double start = 0.0;  // arclength, m
  double end = 0.0;
  double grade = 0.0;  // percent, negative is downhill in travel direction

  bool operator==(const RoadSegment&) const = default;
};

struct Intersection {
  std::string name;
  double arclength = 0.0;

  bool operator==(const Intersection&) const = default;
};

struct SegmentLocation {
  std::string segment_name;
  std::size_t segment_index = 0;
  double arclength = 0.0;
  double lateral_offset = 0.0;  // m, right positive
  bool out_of_corridor = false;

  bool operator==(const SegmentLocation&) const = default;
};

class RoadNetwork {
 public:
  RoadNetwork() = default;
  /// Throws ConfigError unless the geometry is consistent: at least two
  /// distinct vertices, segments tiling [0, length] in order, grades in
  /// [-10, 20], intersections strictly increasing inside the corridor.
  RoadNetwork(std::vector<Vec3> centerline, std::vector<RoadSegment> segments,
              std::vector<Intersection> intersections);

  static RoadNetwork parse(std::string_view text, const std::string& source = "<road>");
  static RoadNetwork load(const std::string& path);
  std::string serialize() const;

  bool empty() const { return centerline_.empty(); }
  double length() const { return vertex_arclength_.empty() ? 0.0 : vertex_arclength_.back(); }
  const std::vector<Vec3>& centerline() const { return centerline_; }
  const std::vector<RoadSegment>& segments() const { return segments_; }
  const std::vector<Intersection>& intersections() const { return intersections_; }

  /// Nearest point on the centerline in plan view (x, z). Positions past
  /// either end clamp to it and set out_of_corridor.
  /// Throws ConfigError for an empty network.
  SegmentLocation locate(Vec3 position) const;

  /// Centerline point at arclength s (clamped to the corridor), shifted
  /// `lateral_offset` meters to the right of the travel direction.
  Vec3 point_at(double s, double lateral_offset = 0.0) const;
  /// Unit travel direction at arclength s.
  Vec3 direction_at(double s) const;

  std::size_t segment_index_at(double s) const;
  /// Throws ArgumentError for an unknown name.
  const Intersection& intersection(std::string_view name) const;

 private:
  std::size_t edge_at(double s) const;

  std::vector<Vec3> centerline_;
  std::vector<double> vertex_arclength_;
  std::vector<RoadSegment> segments_;
  std::vector<Intersection> intersections_;
};

/// location.arclength - intersection arclength: negative before it.
/// Throws ArgumentError for an unknown intersection.
double signed_distance_to_intersection(const SegmentLocation& location, std::string_view name,
                                       const RoadNetwork& network);

struct NearestIntersection {
  std::string name;
  double signed_distance = 0.0;
};

/// Smallest |signed distance|; ties go to the earlier intersection.
/// std::nullopt when the network has no intersections.
std::optional<NearestIntersection> nearest_intersection(const SegmentLocation& location,
                                                        const RoadNetwork& network);

/// Grade of the containing segment. Throws ArgumentError for an
/// out-of-corridor location.
double grade_at(const SegmentLocation& location, const RoadNetwork& network);

/// Path of the bundled corridor fixture.
std::string bundled_corridor_path();

}  // namespace orclsim
