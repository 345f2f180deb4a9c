#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "orclsim/errors.hpp"
#include "orclsim/spatial.hpp"

using namespace orclsim;

namespace {

const RoadNetwork& corridor() {
  static const RoadNetwork net = RoadNetwork::load(bundled_corridor_path());
  return net;
}

}  // namespace

TEST(Corridor, FixtureShape) {
  const auto& net = corridor();
  EXPECT_NEAR(net.length(), 420.0, 1e-6);
  ASSERT_EQ(net.segments().size(), 4u);
  ASSERT_EQ(net.intersections().size(), 3u);
  EXPECT_DOUBLE_EQ(net.intersection("intersection_2").arclength, 230.0);
}

TEST(Locate, OnTheCenterline) {
  const auto& net = corridor();
  const auto loc = net.locate({55.0, 1.7, 0.0});
  EXPECT_EQ(loc.segment_name, "segment_0");
  EXPECT_NEAR(loc.arclength, 55.0, 1e-9);
  EXPECT_NEAR(loc.lateral_offset, 0.0, 1e-12);
  EXPECT_FALSE(loc.out_of_corridor);
}

TEST(Locate, LeftOfTravelIsNegative) {
  const auto& net = corridor();
  const Vec3 left = net.point_at(55.0, -2.0);
  EXPECT_NEAR(left.z, 2.0, 1e-12);  // travelling +x, right is -z
  EXPECT_NEAR(net.locate(left).lateral_offset, -2.0, 1e-9);
  EXPECT_NEAR(net.locate(net.point_at(300.0, 3.5)).lateral_offset, 3.5, 1e-9);
}

TEST(Locate, PastTheEndIsClampedAndFlagged) {
  const auto& net = corridor();
  const Vec3 end = net.point_at(net.length());
  const Vec3 dir = net.direction_at(net.length());
  const auto loc = net.locate(end + 10.0 * dir);
  EXPECT_TRUE(loc.out_of_corridor);
  EXPECT_NEAR(loc.arclength, net.length(), 1e-9);
  EXPECT_TRUE(net.locate({-5.0, 0.0, 0.0}).out_of_corridor);
  EXPECT_THROW(grade_at(loc, net), ArgumentError);
}

TEST(Locate, EmptyNetworkIsAConfigError) {
  EXPECT_THROW(RoadNetwork{}.locate({0, 0, 0}), ConfigError);
}

TEST(Locate, RoundTripsPointAt) {
  const auto& net = corridor();
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> s(0.5, 419.5), lat(-4.0, 4.0);
  for (int i = 0; i < 2000; ++i) {
    const double a = s(rng), l = lat(rng);
    // Skip the inside of the bend where nearest-point is ambiguous.
    if (std::abs(a - 380.0) < 5.0 || std::abs(a - 110.0) < 5.0 || std::abs(a - 230.0) < 5.0) continue;
    const auto loc = net.locate(net.point_at(a, l));
    EXPECT_NEAR(loc.arclength, a, 1e-6);
    EXPECT_NEAR(loc.lateral_offset, l, 1e-6);
  }
}

TEST(Distance, SignedAroundIntersectionTwo) {
  const auto& net = corridor();
  EXPECT_NEAR(signed_distance_to_intersection(net.locate(net.point_at(215.0)), "intersection_2", net),
              -15.0, 1e-6);
  EXPECT_NEAR(signed_distance_to_intersection(net.locate(net.point_at(235.0)), "intersection_2", net),
              5.0, 1e-6);
  EXPECT_NEAR(signed_distance_to_intersection(net.locate(net.point_at(230.0)), "intersection_2", net),
              0.0, 1e-6);
  EXPECT_THROW(signed_distance_to_intersection(net.locate(net.point_at(1.0)), "nowhere", net),
               ArgumentError);
}

TEST(Distance, MonotoneAlongTheCorridor) {
  const auto& net = corridor();
  double prev = -1e9;
  for (double s = 0.0; s <= net.length(); s += 0.5) {
    const double d = signed_distance_to_intersection(net.locate(net.point_at(s)), "intersection_2", net);
    EXPECT_GT(d, prev);
    prev = d;
  }
}

TEST(Distance, NearestIntersectionTiesGoEarlier) {
  const auto& net = corridor();
  const auto mid = nearest_intersection(net.locate(net.point_at(170.0)), net);
  ASSERT_TRUE(mid);
  EXPECT_EQ(mid->name, "intersection_1");
  EXPECT_NEAR(mid->signed_distance, 60.0, 1e-6);
  const auto near3 = nearest_intersection(net.locate(net.point_at(320.0)), net);
  EXPECT_EQ(near3->name, "intersection_3");
  EXPECT_NEAR(near3->signed_distance, -10.0, 1e-6);
}

TEST(Grade, PerSegment) {
  const auto& net = corridor();
  EXPECT_DOUBLE_EQ(grade_at(net.locate(net.point_at(170.0)), net), -4.0);
  EXPECT_DOUBLE_EQ(grade_at(net.locate(net.point_at(50.0)), net), 0.0);
}

TEST(Format, SerializeParseRoundTrip) {
  const auto& net = corridor();
  const auto again = RoadNetwork::parse(net.serialize());
  EXPECT_EQ(again.segments(), net.segments());
  EXPECT_EQ(again.intersections(), net.intersections());
  EXPECT_EQ(again.centerline(), net.centerline());
  EXPECT_EQ(again.serialize(), net.serialize());
}

TEST(Format, BadFilesAreRejected) {
  EXPECT_THROW(RoadNetwork::parse("V 0 0 0\n"), FormatError);
  EXPECT_THROW(RoadNetwork::parse("orcl-road v1\nV 0 0 0\nX 1\n"), FormatError);
  EXPECT_THROW(RoadNetwork::parse("orcl-road v1\nV 0 0 0\nV 10 0 0\nS a 0 5 0\n"), ConfigError);
  EXPECT_THROW(RoadNetwork::parse("orcl-road v1\nV 0 0 0\nV 10 0 0\nS a 0 10 30\n"), ConfigError);
  EXPECT_THROW(
      RoadNetwork::parse("orcl-road v1\nV 0 0 0\nV 10 0 0\nS a 0 10 0\nI b 5\nI c 4\n"),
      ConfigError);
  EXPECT_THROW(RoadNetwork::parse("orcl-road v1\nV 0 0 0\nV 0 5 0\nS a 0 5 0\n"), ConfigError);
  try {
    RoadNetwork::parse("orcl-road v1\nV 0 0 zero\n", "x.road");
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_EQ(e.source(), "x.road");
    EXPECT_EQ(e.line(), 2u);
  }
}
