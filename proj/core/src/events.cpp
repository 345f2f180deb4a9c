#include "orclsim/events.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <tuple>

#include "orclsim/errors.hpp"

namespace orclsim {

namespace {

constexpr std::array<std::string_view, 3> kSourceNames{"hr", "sge", "gte"};

struct Candidate {
  double gap;
  double earlier;
  double later;
  std::size_t first;
  std::size_t second;
};

}  // namespace

std::string_view to_string(EventSource source) {
  return kSourceNames[static_cast<std::size_t>(source)];
}

std::optional<EventSource> parse_event_source(std::string_view name) {
  for (std::size_t i = 0; i < kSourceNames.size(); ++i) {
    if (kSourceNames[i] == name) return static_cast<EventSource>(i);
  }
  return std::nullopt;
}

std::vector<ChangeEvent> change_events_at(std::span<const std::size_t> indices,
                                          std::span<const double> probabilities,
                                          std::span<const Timestamp> series_times) {
  std::vector<ChangeEvent> out;
  out.reserve(indices.size());
  for (const std::size_t i : indices) {
    if (i + 1 >= series_times.size() || i >= probabilities.size()) {
      throw ArgumentError("change_events_at: index outside the series");
    }
    const double t = 0.5 * (series_times[i].seconds + series_times[i + 1].seconds);
    out.push_back({i, {t}, probabilities[i]});
  }
  return out;
}

std::vector<MatchPair> greedy_match(std::span<const Timestamp> first,
                                    std::span<const Timestamp> second, double tolerance) {
  if (!(tolerance > 0.0)) throw ArgumentError("greedy_match: tolerance must be positive");
  std::vector<Candidate> candidates;
  for (std::size_t i = 0; i < first.size(); ++i) {
    for (std::size_t j = 0; j < second.size(); ++j) {
      const double a = first[i].seconds;
      const double b = second[j].seconds;
      const double gap = std::abs(a - b);
      if (gap <= tolerance) candidates.push_back({gap, std::min(a, b), std::max(a, b), i, j});
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& x, const Candidate& y) {
    return std::tie(x.gap, x.earlier, x.later, x.first, x.second) <
           std::tie(y.gap, y.earlier, y.later, y.first, y.second);
  });
  std::vector<bool> used_first(first.size(), false);
  std::vector<bool> used_second(second.size(), false);
  std::vector<MatchPair> pairs;
  for (const auto& c : candidates) {
    if (used_first[c.first] || used_second[c.second]) continue;
    used_first[c.first] = used_second[c.second] = true;
    pairs.push_back({c.first, c.second});
  }
  std::sort(pairs.begin(), pairs.end(),
            [](const MatchPair& x, const MatchPair& y) { return x.first < y.first; });
  return pairs;
}

std::vector<CorrelatedEvent> correlate(std::span<const ChangeEvent> hr,
                                       std::span<const ChangeEvent> sge,
                                       std::span<const ChangeEvent> gte,
                                       std::span<const AnnotationEvent> annotations,
                                       double tolerance, std::string_view participant) {
  if (!(tolerance > 0.0)) throw ArgumentError("correlate: tolerance must be positive");

  const std::array<std::span<const ChangeEvent>, 3> inputs{hr, sge, gte};
  std::array<std::vector<CorrelatedEvent>, 3> grouped;
  std::array<std::vector<Timestamp>, 3> times;
  for (std::size_t s = 0; s < 3; ++s) {
    for (const auto& e : inputs[s]) {
      CorrelatedEvent ce;
      ce.participant = std::string(participant);
      ce.source = static_cast<EventSource>(s);
      ce.index = e.index;
      ce.timestamp = e.timestamp;
      ce.probability = e.probability;
      grouped[s].push_back(std::move(ce));
      times[s].push_back(e.timestamp);
    }
  }

  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = a + 1; b < 3; ++b) {
      for (const auto& p : greedy_match(times[a], times[b], tolerance)) {
        auto& ea = grouped[a][p.first];
        auto& eb = grouped[b][p.second];
        ea.matched_counterpart_events.push_back(
            {static_cast<EventSource>(b), eb.timestamp, eb.timestamp - ea.timestamp});
        eb.matched_counterpart_events.push_back(
            {static_cast<EventSource>(a), ea.timestamp, ea.timestamp - eb.timestamp});
      }
    }
  }

  std::vector<Timestamp> annotation_times;
  annotation_times.reserve(annotations.size());
  for (const auto& a : annotations) annotation_times.push_back(a.timestamp);
  for (std::size_t s = 0; s < 3; ++s) {
    for (const auto& p : greedy_match(times[s], annotation_times, tolerance)) {
      grouped[s][p.first].matched_annotation = annotations[p.second];
    }
  }

  std::vector<CorrelatedEvent> out;
  for (auto& g : grouped) {
    for (auto& e : g) out.push_back(std::move(e));
  }
  std::stable_sort(out.begin(), out.end(), [](const CorrelatedEvent& x, const CorrelatedEvent& y) {
    return std::tie(x.timestamp, x.source) < std::tie(y.timestamp, y.source);
  });
  return out;
}

void locate_events(std::vector<CorrelatedEvent>& events, const SampleStream<PoseSample>& pose,
                   const RoadNetwork& network) {
  if (pose.empty() || network.empty()) return;
  std::vector<Timestamp> timeline;
  std::vector<std::size_t> order(events.size());
  for (std::size_t i = 0; i < events.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return events[a].timestamp < events[b].timestamp;
  });
  for (const std::size_t i : order) timeline.push_back(events[i].timestamp);
  const auto held = resample_hold(pose, timeline);
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto& sample = held.samples[k].value;
    if (!sample) continue;
    auto& e = events[order[k]];
    e.position = network.locate(sample->head_position);
    if (const auto near = nearest_intersection(*e.position, network)) {
      e.nearest_intersection = near->name;
      e.distance_to_nearest_intersection = near->signed_distance;
    }
  }
}

std::vector<SummaryRow> summarize_by_intersection(std::span<const CorrelatedEvent> events,
                                                  const RoadNetwork& network, double radius) {
  if (!(radius > 0.0)) throw ArgumentError("summarize_by_intersection: radius must be positive");
  std::map<std::string, std::size_t, std::less<>> rank;
  for (std::size_t i = 0; i < network.intersections().size(); ++i) {
    rank.emplace(network.intersections()[i].name, i);
  }
  const std::size_t between_rank = network.intersections().size();

  std::vector<std::pair<std::size_t, SummaryRow>> rows;
  for (const auto& e : events) {
    if (!e.position || !e.nearest_intersection || !e.distance_to_nearest_intersection) continue;
    SummaryRow row;
    row.participant = e.participant;
    row.source = e.source;
    row.signed_distance = *e.distance_to_nearest_intersection;
    row.timestamp = e.timestamp;
    std::size_t r = between_rank;
    if (std::abs(row.signed_distance) <= radius) {
      row.intersection = *e.nearest_intersection;
      r = rank.at(row.intersection);
    } else {
      row.intersection = std::string(kBetweenIntersections);
    }
    rows.emplace_back(r, std::move(row));
  }
  std::stable_sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) {
    return std::tie(x.second.participant, x.first, x.second.timestamp) <
           std::tie(y.second.participant, y.first, y.second.timestamp);
  });
  std::vector<SummaryRow> out;
  out.reserve(rows.size());
  for (auto& [r, row] : rows) out.push_back(std::move(row));
  return out;
}

std::string_view pedestrian_category_description(AnnotationCategory category) {
  switch (category) {
    case AnnotationCategory::vehicle_interaction:
      return "noticed first approaching vehicle";
    case AnnotationCategory::crossing_start:
      return "start crossing after first vehicle";
    case AnnotationCategory::crossing_in_lane:
      return "crossing in approaching lane";
    default:
      return "other";
  }
}

std::vector<CategoryRow> categorize_pedestrian_events(std::span<const CorrelatedEvent> events) {
  constexpr std::array<AnnotationCategory, 4> kOrder{
      AnnotationCategory::vehicle_interaction, AnnotationCategory::crossing_start,
      AnnotationCategory::crossing_in_lane, AnnotationCategory::other};
  std::array<CategoryRow, 4> rows;
  for (std::size_t i = 0; i < kOrder.size(); ++i) {
    rows[i].category = kOrder[i];
    rows[i].description = std::string(pedestrian_category_description(kOrder[i]));
  }
  for (const auto& e : events) {
    if (e.source != EventSource::hr) continue;
    std::size_t slot = 3;
    if (e.matched_annotation) {
      const auto it = std::find(kOrder.begin(), kOrder.end() - 1, e.matched_annotation->category);
      if (it != kOrder.end() - 1) slot = static_cast<std::size_t>(it - kOrder.begin());
    }
    ++rows[slot].count;
    rows[slot].participants.push_back(e.participant);
  }
  std::vector<CategoryRow> out;
  for (auto& row : rows) {
    if (row.count == 0) continue;
    std::sort(row.participants.begin(), row.participants.end());
    row.participants.erase(std::unique(row.participants.begin(), row.participants.end()),
                           row.participants.end());
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace orclsim
