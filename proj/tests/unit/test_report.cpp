#include <gtest/gtest.h>

#include <algorithm>
#include <string>

#include "orclsim/report.hpp"
#include "scratch.hpp"

using namespace orclsim;
using testing_support::scratch_dir;
using testing_support::slurp;

namespace {

std::size_t count_of(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

std::size_t lines(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

CorrelatedEvent sample_event(EventSource source, double t, bool located) {
  CorrelatedEvent e;
  e.participant = "2";
  e.source = source;
  e.index = static_cast<std::size_t>(t);
  e.timestamp = {t};
  e.probability = 0.97;
  if (located) {
    e.position = SegmentLocation{"segment_1", 1, 215.0, -0.25, false};
    e.nearest_intersection = "intersection_2";
    e.distance_to_nearest_intersection = -15.0;
  }
  e.matched_annotation = AnnotationEvent{{t - 1}, AnnotationCategory::other, "looked, then braked"};
  e.matched_counterpart_events.push_back({EventSource::gte, {t + 2}, 2.0});
  return e;
}

}  // namespace

TEST(Report, EmptyAnalysisWritesHeadersOnly) {
  const auto dir = scratch_dir("empty-report");
  emit_report(AnalysisReport{}, dir);
  EXPECT_EQ(lines(slurp(dir / "events.csv")), 1u);
  EXPECT_EQ(lines(slurp(dir / "summary.csv")), 1u);
  EXPECT_FALSE(std::filesystem::exists(dir / "categories.csv"));
  const auto doc = nlohmann::ordered_json::parse(slurp(dir / "report.json"));
  std::vector<std::string> keys;
  for (const auto& [k, v] : doc.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"session", "config", "events", "summaries", "versions"}));
  EXPECT_TRUE(doc["events"].empty());
  EXPECT_EQ(count_of(slurp(dir / "scatter.svg"), "class=\"mark "), 0u);
}

TEST(Report, ScatterHasOneMarkPerEvent) {
  std::vector<CorrelatedEvent> events{sample_event(EventSource::hr, 21.5, true),
                                      sample_event(EventSource::sge, 30.5, true),
                                      sample_event(EventSource::gte, 31.5, false),
                                      sample_event(EventSource::hr, 40.5, false)};
  const auto svg = scatter_svg(events);
  EXPECT_EQ(count_of(svg, "class=\"mark "), events.size());
  EXPECT_EQ(count_of(svg, "mark-hr"), 2u);
  EXPECT_EQ(lines(events_csv(events)), events.size() + 1);
}

TEST(Report, EventsSurviveJson) {
  for (bool located : {true, false}) {
    const auto e = sample_event(EventSource::gte, 12.25, located);
    const auto back = event_from_json(to_json(e));
    EXPECT_EQ(back.participant, e.participant);
    EXPECT_EQ(back.source, e.source);
    EXPECT_EQ(back.index, e.index);
    EXPECT_EQ(back.timestamp, e.timestamp);
    EXPECT_EQ(back.probability, e.probability);
    EXPECT_EQ(back.position, e.position);
    EXPECT_EQ(back.nearest_intersection, e.nearest_intersection);
    EXPECT_EQ(back.distance_to_nearest_intersection, e.distance_to_nearest_intersection);
    EXPECT_EQ(back.matched_annotation, e.matched_annotation);
    ASSERT_EQ(back.matched_counterpart_events.size(), 1u);
    EXPECT_EQ(back.matched_counterpart_events[0].gap, 2.0);
  }
}

TEST(Report, CsvQuotesFieldsWithCommas) {
  std::vector<CorrelatedEvent> events{sample_event(EventSource::hr, 5.0, true)};
  EXPECT_NE(events_csv(events).find("\"looked, then braked\""), std::string::npos);
}

TEST(Report, CategoriesAreWrittenWhenPresent) {
  AnalysisReport r;
  r.categories.push_back({AnnotationCategory::crossing_start, "start crossing after first vehicle", 2, {"3", "4"}});
  const auto dir = scratch_dir("categories");
  emit_report(r, dir);
  EXPECT_EQ(lines(slurp(dir / "categories.csv")), 2u);
  const auto doc = nlohmann::ordered_json::parse(slurp(dir / "report.json"));
  ASSERT_EQ(doc["summaries"].size(), 1u);
  EXPECT_EQ(doc["summaries"][0]["table"], "pedestrian_category");
}

TEST(Report, UnwritableDirectoryIsAnIoError) {
  const auto dir = scratch_dir("blocked");
  testing_support::spit(dir / "file", "x");
  EXPECT_THROW(emit_report(AnalysisReport{}, dir / "file" / "sub"), IoError);
}
