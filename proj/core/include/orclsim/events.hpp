#pragma once

// Change-event correlation across HR, SGE and GTE series and manual
// annotations, plus per-intersection and pedestrian-category summaries.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "orclsim/model.hpp"
#include "orclsim/spatial.hpp"

namespace orclsim {

enum class EventSource { hr, sge, gte };

std::string_view to_string(EventSource source);
std::optional<EventSource> parse_event_source(std::string_view name);

/// A change point from one series: index i means "a block starts at i + 1".
struct ChangeEvent {
  std::size_t index = 0;
  Timestamp timestamp;
  double probability = 0.0;
};

/// Timestamp of change index i: midway between samples i and i + 1.
std::vector<ChangeEvent> change_events_at(std::span<const std::size_t> indices,
                                          std::span<const double> probabilities,
                                          std::span<const Timestamp> series_times);

struct CounterpartMatch {
  EventSource source = EventSource::hr;
  Timestamp timestamp;
  double gap = 0.0;  // counterpart time minus own time, seconds
};

struct CorrelatedEvent {
  std::string participant;
  EventSource source = EventSource::hr;
  std::size_t index = 0;
  Timestamp timestamp;
  double probability = 0.0;
  std::optional<SegmentLocation> position;
  std::optional<std::string> nearest_intersection;
  std::optional<double> distance_to_nearest_intersection;  // signed, m
  std::optional<AnnotationEvent> matched_annotation;
  std::vector<CounterpartMatch> matched_counterpart_events;
};

/// One greedy pairing between two time-sorted event lists.
struct MatchPair {
  std::size_t first = 0;   // index into the first list
  std::size_t second = 0;  // index into the second list
};

/// Greedy nearest-in-time matching: candidate pairs with |gap| <= tolerance
/// are taken in order of (|gap|, earlier time, later time), each event used at
/// most once. The key does not depend on which list is first, so swapping the
/// lists swaps the roles in every pair and nothing else. Output is sorted by
/// `first`.
std::vector<MatchPair> greedy_match(std::span<const Timestamp> first,
                                    std::span<const Timestamp> second, double tolerance);

/// Correlates every event with the other two sources and with annotations.
/// Each event appears exactly once in the output, ordered by time then source.
/// Throws ArgumentError unless tolerance > 0.
std::vector<CorrelatedEvent> correlate(std::span<const ChangeEvent> hr,
                                       std::span<const ChangeEvent> sge,
                                       std::span<const ChangeEvent> gte,
                                       std::span<const AnnotationEvent> annotations,
                                       double tolerance, std::string_view participant = {});

/// Fills position and nearest-intersection fields from the pose stream
/// (position held from the latest pose sample at or before the event).
void locate_events(std::vector<CorrelatedEvent>& events, const SampleStream<PoseSample>& pose,
                   const RoadNetwork& network);

inline constexpr std::string_view kBetweenIntersections = "between-intersections";

struct SummaryRow {
  std::string participant;
  std::string intersection;  // or kBetweenIntersections
  EventSource source = EventSource::hr;
  double signed_distance = 0.0;  // to the nearest intersection, m
  Timestamp timestamp;
};

/// One row per located event, attributed to the nearest intersection when
/// within `radius`. Rows are sorted by participant, then intersection in
/// corridor order (between-intersections last), then time.
/// Throws ArgumentError unless radius > 0.
std::vector<SummaryRow> summarize_by_intersection(std::span<const CorrelatedEvent> events,
                                                  const RoadNetwork& network, double radius);

struct CategoryRow {
  AnnotationCategory category = AnnotationCategory::other;
  std::string description;
  std::size_t count = 0;
  std::vector<std::string> participants;  // sorted, unique
};

/// Counts HR change points by the category of their matched annotation.
/// Unmatched events and categories outside the pedestrian table count as
/// `other`. Only non-empty rows are returned, in table order.
std::vector<CategoryRow> categorize_pedestrian_events(std::span<const CorrelatedEvent> events);

std::string_view pedestrian_category_description(AnnotationCategory category);

}  // namespace orclsim
