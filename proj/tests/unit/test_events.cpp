#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "oracle.hpp"
#include "orclsim/errors.hpp"
#include "orclsim/events.hpp"

using namespace orclsim;

namespace {

ChangeEvent at(double t, std::size_t index = 0) { return {index, {t}, 0.9}; }

std::vector<Timestamp> times(std::initializer_list<double> ts) {
  std::vector<Timestamp> out;
  for (double t : ts) out.push_back({t});
  return out;
}

const RoadNetwork& corridor() {
  static const RoadNetwork net = RoadNetwork::load(bundled_corridor_path());
  return net;
}

CorrelatedEvent hr_event(std::string participant, double t,
                         std::optional<AnnotationCategory> category) {
  CorrelatedEvent e;
  e.participant = std::move(participant);
  e.source = EventSource::hr;
  e.timestamp = {t};
  if (category) e.matched_annotation = AnnotationEvent{{t}, *category, "note"};
  return e;
}

}  // namespace

TEST(ChangeEvents, MidpointTimes) {
  const std::vector<std::size_t> idx{0, 2};
  const std::vector<double> p{0.7, 0.1, 0.8, 0.0};
  const auto t = times({10, 11, 12, 13});
  const auto ev = change_events_at(idx, p, t);
  ASSERT_EQ(ev.size(), 2u);
  EXPECT_DOUBLE_EQ(ev[0].timestamp.seconds, 10.5);
  EXPECT_DOUBLE_EQ(ev[1].timestamp.seconds, 12.5);
  EXPECT_DOUBLE_EQ(ev[1].probability, 0.8);
}

TEST(Correlate, HrAndGteWithinTolerance) {
  const std::vector<ChangeEvent> hr{at(100)};
  const std::vector<ChangeEvent> gte{at(98)};
  const auto out = correlate(hr, {}, gte, {}, 5.0, "2");
  ASSERT_EQ(out.size(), 2u);
  const auto& h = out[1].source == EventSource::hr ? out[1] : out[0];
  ASSERT_EQ(h.matched_counterpart_events.size(), 1u);
  EXPECT_EQ(h.matched_counterpart_events[0].source, EventSource::gte);
  EXPECT_DOUBLE_EQ(h.matched_counterpart_events[0].gap, -2.0);
  EXPECT_EQ(h.participant, "2");
}

TEST(Correlate, AnnotationIsAttached) {
  const std::vector<ChangeEvent> hr{at(100)};
  const std::vector<AnnotationEvent> notes{
      {{99}, AnnotationCategory::intersection_approach, "approaching intersection"}};
  const auto out = correlate(hr, {}, {}, notes, 5.0);
  ASSERT_EQ(out.size(), 1u);
  ASSERT_TRUE(out[0].matched_annotation);
  EXPECT_EQ(out[0].matched_annotation->label, "approaching intersection");
}

TEST(Correlate, EquidistantTieGoesToTheEarlierEvent) {
  const auto pairs = greedy_match(times({98, 102}), times({100}), 5.0);
  ASSERT_EQ(pairs.size(), 1u);
  EXPECT_EQ(pairs[0].first, 0u);
  const std::vector<ChangeEvent> hr{at(98, 1), at(102, 2)};
  const std::vector<ChangeEvent> gte{at(100)};
  const auto out = correlate(hr, {}, gte, {}, 5.0);
  for (const auto& e : out) {
    if (e.source == EventSource::hr) {
      EXPECT_EQ(e.matched_counterpart_events.size(), e.index == 1 ? 1u : 0u);
    }
  }
}

TEST(Correlate, OutOfToleranceStaysUnmatched) {
  EXPECT_TRUE(greedy_match(times({0}), times({5.5}), 5.0).empty());
  EXPECT_EQ(greedy_match(times({0}), times({5.0}), 5.0).size(), 1u);
  EXPECT_THROW(greedy_match(times({0}), times({1}), 0.0), ArgumentError);
}

TEST(Correlate, GreedyMatchesBruteForceAndIsSymmetric) {
  std::mt19937_64 rng(21);
  for (int k = 0; k < 400; ++k) {
    const std::size_t na = rng() % 6, nb = rng() % 6;
    std::set<double> pool;
    while (pool.size() < na + nb) pool.insert(std::round(std::uniform_real_distribution<double>(0, 30)(rng) * 8) / 8);
    std::vector<double> all(pool.begin(), pool.end());
    std::shuffle(all.begin(), all.end(), rng);
    std::vector<double> a(all.begin(), all.begin() + na), b(all.begin() + na, all.end());
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::vector<Timestamp> ta, tb;
    for (double t : a) ta.push_back({t});
    for (double t : b) tb.push_back({t});

    const auto got = greedy_match(ta, tb, 5.0);
    const auto expected = oracle::best_matching(a, b, 5.0);
    ASSERT_EQ(got.size(), expected.size());
    for (std::size_t i = 0; i < got.size(); ++i) {
      EXPECT_EQ(got[i].first, expected[i].first);
      EXPECT_EQ(got[i].second, expected[i].second);
    }
    auto swapped = greedy_match(tb, ta, 5.0);
    std::vector<std::pair<std::size_t, std::size_t>> back;
    for (const auto& p : swapped) back.emplace_back(p.second, p.first);
    std::sort(back.begin(), back.end());
    EXPECT_EQ(back, expected);
  }
}

TEST(Correlate, EveryEventAppearsOnce) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0, 200);
  for (int k = 0; k < 50; ++k) {
    std::vector<ChangeEvent> hr, sge, gte;
    for (std::size_t i = 0; i < rng() % 8; ++i) hr.push_back(at(u(rng), i));
    for (std::size_t i = 0; i < rng() % 8; ++i) sge.push_back(at(u(rng), 100 + i));
    for (std::size_t i = 0; i < rng() % 8; ++i) gte.push_back(at(u(rng), 200 + i));
    for (auto* v : {&hr, &sge, &gte}) {
      std::sort(v->begin(), v->end(),
                [](const ChangeEvent& x, const ChangeEvent& y) { return x.timestamp < y.timestamp; });
    }
    const auto out = correlate(hr, sge, gte, {}, 5.0);
    ASSERT_EQ(out.size(), hr.size() + sge.size() + gte.size());
    std::multiset<std::pair<int, std::size_t>> seen;
    for (const auto& e : out) seen.insert({static_cast<int>(e.source), e.index});
    for (const auto& e : hr) EXPECT_EQ(seen.count({0, e.index}), 1u);
    for (const auto& e : sge) EXPECT_EQ(seen.count({1, e.index}), 1u);
    for (const auto& e : gte) EXPECT_EQ(seen.count({2, e.index}), 1u);
    EXPECT_TRUE(std::is_sorted(out.begin(), out.end(), [](const auto& x, const auto& y) {
      return x.timestamp < y.timestamp;
    }));
  }
}

TEST(Summaries, ParticipantTwoAroundIntersectionTwo) {
  const auto& net = corridor();
  std::vector<CorrelatedEvent> events{hr_event("2", 21.5, std::nullopt),
                                      hr_event("2", 28.5, std::nullopt)};
  SampleStream<PoseSample> pose{StreamKind::pose, 30.0, 0.0, {}};
  pose.samples.push_back({{21.5}, {net.point_at(215.0), {1, 0, 0}, 0, 3}});
  pose.samples.push_back({{28.5}, {net.point_at(235.0), {1, 0, 0}, 0, 3}});
  locate_events(events, pose, net);
  const auto rows = summarize_by_intersection(events, net, 20.0);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].intersection, "intersection_2");
  EXPECT_NEAR(rows[0].signed_distance, -15.0, 1e-6);
  EXPECT_EQ(rows[1].intersection, "intersection_2");
  EXPECT_NEAR(rows[1].signed_distance, 5.0, 1e-6);
}

TEST(Summaries, FarEventsAreBetweenIntersections) {
  const auto& net = corridor();
  std::vector<CorrelatedEvent> events{hr_event("1", 1.0, std::nullopt),
                                      hr_event("1", 2.0, std::nullopt)};
  SampleStream<PoseSample> pose{StreamKind::pose, 30.0, 0.0, {}};
  pose.samples.push_back({{0.0}, {net.point_at(170.0), {1, 0, 0}, 0, 3}});
  pose.samples.push_back({{1.5}, {net.point_at(105.0), {1, 0, 0}, 0, 3}});
  locate_events(events, pose, net);
  const auto rows = summarize_by_intersection(events, net, 20.0);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].intersection, "intersection_1");
  EXPECT_EQ(rows[1].intersection, kBetweenIntersections);
  EXPECT_TRUE(summarize_by_intersection({}, net, 20.0).empty());
  EXPECT_THROW(summarize_by_intersection(events, net, 0.0), ArgumentError);
}

TEST(Summaries, NeverMoreRowsThanEvents) {
  const auto& net = corridor();
  std::vector<CorrelatedEvent> events;
  SampleStream<PoseSample> pose{StreamKind::pose, 30.0, 0.0, {}};
  for (int i = 0; i < 100; ++i) {
    events.push_back(hr_event("3", i + 0.5, std::nullopt));
    pose.samples.push_back({{i + 0.0}, {net.point_at(4.0 * i), {1, 0, 0}, 0, 3}});
  }
  events.push_back(hr_event("3", -1.0, std::nullopt));  // before the first pose sample
  locate_events(events, pose, net);
  EXPECT_FALSE(events.back().position);
  EXPECT_LE(summarize_by_intersection(events, net, 20.0).size(), events.size());
}

TEST(Categories, PedestrianTableCounts) {
  using C = AnnotationCategory;
  const std::vector<CorrelatedEvent> events{
      hr_event("1", 10, C::vehicle_interaction), hr_event("5", 11, C::vehicle_interaction),
      hr_event("3", 12, C::crossing_start),      hr_event("4", 13, C::crossing_start),
      hr_event("1", 14, C::crossing_in_lane),    hr_event("2", 15, C::crossing_in_lane),
      hr_event("5", 16, C::crossing_in_lane)};
  const auto rows = categorize_pedestrian_events(events);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].category, C::vehicle_interaction);
  EXPECT_EQ(rows[0].count, 2u);
  EXPECT_EQ(rows[0].participants, (std::vector<std::string>{"1", "5"}));
  EXPECT_EQ(rows[1].count, 2u);
  EXPECT_EQ(rows[1].participants, (std::vector<std::string>{"3", "4"}));
  EXPECT_EQ(rows[2].count, 3u);
  EXPECT_EQ(rows[2].participants, (std::vector<std::string>{"1", "2", "5"}));
  EXPECT_EQ(rows[0].count + rows[1].count + rows[2].count, 7u);
  EXPECT_EQ(rows[2].description, "crossing in approaching lane");
}

TEST(Categories, UnmatchedIsOther) {
  auto e = hr_event("1", 3, std::nullopt);
  auto g = e;
  g.source = EventSource::gte;
  const std::vector<CorrelatedEvent> events{e, g};
  const auto rows = categorize_pedestrian_events(events);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].category, AnnotationCategory::other);
  EXPECT_EQ(rows[0].count, 1u);
}
