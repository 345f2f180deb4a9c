#include "orclsim/report.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "orclsim/errors.hpp"
#include "orclsim/ingest.hpp"
#include "orclsim/keyvalue.hpp"

namespace orclsim {

namespace {

using ojson = nlohmann::ordered_json;

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (const char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string optional_number(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

std::string counterparts_text(const CorrelatedEvent& e) {
  std::string out;
  for (const auto& m : e.matched_counterpart_events) {
    if (!out.empty()) out += ';';
    out += std::string(to_string(m.source)) + "@" + format_double(m.timestamp.seconds);
  }
  return out;
}

std::string join(const std::vector<std::string>& items, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += sep;
    out += items[i];
  }
  return out;
}

std::string xml_escape(std::string_view text) {
  std::string out;
  for (const char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

ojson number_or_null(const std::optional<double>& v) { return v ? ojson(*v) : ojson(nullptr); }

}  // namespace

std::string library_version() { return ORCLSIM_VERSION_STRING; }

std::string events_csv(std::span<const CorrelatedEvent> events) {
  std::string out =
      "participant,source,index,timestamp,probability,segment,arclength,lateral_offset,"
      "out_of_corridor,nearest_intersection,signed_distance,annotation_time,"
      "annotation_category,annotation_label,counterparts\n";
  for (const auto& e : events) {
    std::vector<std::string> f;
    f.push_back(csv_field(e.participant));
    f.emplace_back(to_string(e.source));
    f.push_back(std::to_string(e.index));
    f.push_back(format_double(e.timestamp.seconds));
    f.push_back(format_double(e.probability));
    if (e.position) {
      f.push_back(csv_field(e.position->segment_name));
      f.push_back(format_double(e.position->arclength));
      f.push_back(format_double(e.position->lateral_offset));
      f.emplace_back(e.position->out_of_corridor ? "1" : "0");
    } else {
      f.insert(f.end(), 4, std::string());
    }
    f.push_back(csv_field(e.nearest_intersection.value_or("")));
    f.push_back(optional_number(e.distance_to_nearest_intersection));
    if (e.matched_annotation) {
      f.push_back(format_double(e.matched_annotation->timestamp.seconds));
      f.emplace_back(to_string(e.matched_annotation->category));
      f.push_back(csv_field(e.matched_annotation->label));
    } else {
      f.insert(f.end(), 3, std::string());
    }
    f.push_back(counterparts_text(e));
    out += join(f, ",") + "\n";
  }
  return out;
}

std::string summary_csv(std::span<const SummaryRow> rows) {
  std::string out = "participant,intersection,source,signed_distance,timestamp\n";
  for (const auto& r : rows) {
    out += csv_field(r.participant) + "," + csv_field(r.intersection) + "," +
           std::string(to_string(r.source)) + "," + format_double(r.signed_distance) + "," +
           format_double(r.timestamp.seconds) + "\n";
  }
  return out;
}

std::string categories_csv(std::span<const CategoryRow> rows) {
  std::string out = "category,description,count,participants\n";
  for (const auto& r : rows) {
    out += std::string(to_string(r.category)) + "," + csv_field(r.description) + "," +
           std::to_string(r.count) + "," + csv_field(join(r.participants, " ")) + "\n";
  }
  return out;
}

std::string scatter_svg(std::span<const CorrelatedEvent> events) {
  constexpr double kWidth = 800.0;
  constexpr double kHeight = 420.0;
  constexpr double kLeft = 60.0;
  constexpr double kRight = 20.0;
  constexpr double kTop = 20.0;
  constexpr double kPlotBottom = 340.0;  // below this: band for events without a position
  constexpr double kBand = 380.0;

  std::vector<std::string> participants;
  double extent = 20.0;
  for (const auto& e : events) {
    participants.push_back(e.participant);
    if (e.distance_to_nearest_intersection) {
      extent = std::max(extent, std::ceil(std::abs(*e.distance_to_nearest_intersection) / 5.0) * 5.0);
    }
  }
  std::sort(participants.begin(), participants.end());
  participants.erase(std::unique(participants.begin(), participants.end()), participants.end());

  const double column = (kWidth - kLeft - kRight) / static_cast<double>(std::max<std::size_t>(1, participants.size()));
  const auto y_of = [&](double d) {
    return kTop + (extent - d) / (2.0 * extent) * (kPlotBottom - kTop);
  };

  std::string out;
  out += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\" "
      "viewBox=\"0 0 {:.0f} {:.0f}\">\n",
      kWidth, kHeight, kWidth, kHeight);
  out += "<rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += fmt::format(
      "<line class=\"axis\" x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" "
      "stroke=\"#888\" stroke-dasharray=\"4 3\"/>\n",
      kLeft, y_of(0.0), kWidth - kRight, y_of(0.0));
  out += fmt::format(
      "<line class=\"axis\" x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" "
      "stroke=\"black\"/>\n",
      kLeft, kTop, kLeft, kPlotBottom);
  for (const double tick : {-extent, -extent / 2.0, 0.0, extent / 2.0, extent}) {
    out += fmt::format(
        "<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"11\" text-anchor=\"end\">{}</text>\n",
        kLeft - 6.0, y_of(tick) + 4.0, format_double(tick));
  }
  out += fmt::format(
      "<text x=\"14\" y=\"{:.2f}\" font-size=\"12\" transform=\"rotate(-90 14 {:.2f})\" "
      "text-anchor=\"middle\">distance to intersection (m)</text>\n",
      0.5 * (kTop + kPlotBottom), 0.5 * (kTop + kPlotBottom));
  out += fmt::format(
      "<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"10\" text-anchor=\"end\">no position</text>\n",
      kLeft - 6.0, kBand + 4.0);
  for (std::size_t p = 0; p < participants.size(); ++p) {
    out += fmt::format(
        "<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"12\" text-anchor=\"middle\">{}</text>\n",
        kLeft + (static_cast<double>(p) + 0.5) * column, kHeight - 8.0,
        xml_escape(participants[p]));
  }

  for (const auto& e : events) {
    const auto p = static_cast<std::size_t>(
        std::lower_bound(participants.begin(), participants.end(), e.participant) -
        participants.begin());
    const double offset = (static_cast<double>(static_cast<int>(e.source)) - 1.0) * 0.22 * column;
    const double x = kLeft + (static_cast<double>(p) + 0.5) * column + offset;
    const bool located = e.distance_to_nearest_intersection.has_value();
    const double y = located ? y_of(*e.distance_to_nearest_intersection) : kBand;
    const std::string_view source = to_string(e.source);
    const std::string fill = located ? "currentColor" : "none";
    const std::string_view colour = e.source == EventSource::hr    ? "#c0392b"
                                    : e.source == EventSource::sge ? "#2471a3"
                                                                   : "#1e8449";
    switch (e.source) {
      case EventSource::hr:
        out += fmt::format(
            "<circle class=\"mark mark-{}\" cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"4\" color=\"{}\" "
            "fill=\"{}\" stroke=\"{}\"/>\n",
            source, x, y, colour, fill, colour);
        break;
      case EventSource::sge:
        out += fmt::format(
            "<rect class=\"mark mark-{}\" x=\"{:.2f}\" y=\"{:.2f}\" width=\"8\" height=\"8\" "
            "color=\"{}\" fill=\"{}\" stroke=\"{}\"/>\n",
            source, x - 4.0, y - 4.0, colour, fill, colour);
        break;
      case EventSource::gte:
        out += fmt::format(
            "<polygon class=\"mark mark-{}\" points=\"{:.2f},{:.2f} {:.2f},{:.2f} {:.2f},{:.2f}\" "
            "color=\"{}\" fill=\"{}\" stroke=\"{}\"/>\n",
            source, x, y - 5.0, x - 4.5, y + 4.0, x + 4.5, y + 4.0, colour, fill, colour);
        break;
    }
  }
  out += "</svg>\n";
  return out;
}

ojson to_json(const CorrelatedEvent& e) {
  ojson j;
  j["participant"] = e.participant;
  j["source"] = std::string(to_string(e.source));
  j["index"] = e.index;
  j["timestamp"] = e.timestamp.seconds;
  j["probability"] = e.probability;
  if (e.position) {
    ojson pos;
    pos["segment"] = e.position->segment_name;
    pos["segment_index"] = e.position->segment_index;
    pos["arclength"] = e.position->arclength;
    pos["lateral_offset"] = e.position->lateral_offset;
    pos["out_of_corridor"] = e.position->out_of_corridor;
    j["position"] = std::move(pos);
  } else {
    j["position"] = nullptr;
  }
  j["nearest_intersection"] =
      e.nearest_intersection ? ojson(*e.nearest_intersection) : ojson(nullptr);
  j["signed_distance"] = number_or_null(e.distance_to_nearest_intersection);
  if (e.matched_annotation) {
    ojson a;
    a["timestamp"] = e.matched_annotation->timestamp.seconds;
    a["category"] = std::string(to_string(e.matched_annotation->category));
    a["label"] = e.matched_annotation->label;
    j["annotation"] = std::move(a);
  } else {
    j["annotation"] = nullptr;
  }
  ojson counterparts = ojson::array();
  for (const auto& m : e.matched_counterpart_events) {
    ojson c;
    c["source"] = std::string(to_string(m.source));
    c["timestamp"] = m.timestamp.seconds;
    c["gap"] = m.gap;
    counterparts.push_back(std::move(c));
  }
  j["counterparts"] = std::move(counterparts);
  return j;
}

CorrelatedEvent event_from_json(const ojson& j) {
  try {
    CorrelatedEvent e;
    e.participant = j.at("participant").get<std::string>();
    const auto source = parse_event_source(j.at("source").get<std::string>());
    if (!source) throw ConfigError("unknown event source in report");
    e.source = *source;
    e.index = j.at("index").get<std::size_t>();
    e.timestamp = {j.at("timestamp").get<double>()};
    e.probability = j.at("probability").get<double>();
    if (const auto& pos = j.at("position"); !pos.is_null()) {
      SegmentLocation loc;
      loc.segment_name = pos.at("segment").get<std::string>();
      loc.segment_index = pos.at("segment_index").get<std::size_t>();
      loc.arclength = pos.at("arclength").get<double>();
      loc.lateral_offset = pos.at("lateral_offset").get<double>();
      loc.out_of_corridor = pos.at("out_of_corridor").get<bool>();
      e.position = loc;
    }
    if (const auto& n = j.at("nearest_intersection"); !n.is_null()) {
      e.nearest_intersection = n.get<std::string>();
    }
    if (const auto& d = j.at("signed_distance"); !d.is_null()) {
      e.distance_to_nearest_intersection = d.get<double>();
    }
    if (const auto& a = j.at("annotation"); !a.is_null()) {
      e.matched_annotation = AnnotationEvent{{a.at("timestamp").get<double>()},
                                             parse_annotation_category(a.at("category").get<std::string>()),
                                             a.at("label").get<std::string>()};
    }
    for (const auto& c : j.at("counterparts")) {
      const auto cs = parse_event_source(c.at("source").get<std::string>());
      if (!cs) throw ConfigError("unknown counterpart source in report");
      e.matched_counterpart_events.push_back(
          {*cs, {c.at("timestamp").get<double>()}, c.at("gap").get<double>()});
    }
    return e;
  } catch (const nlohmann::json::exception& ex) {
    throw ConfigError(std::string("malformed report event: ") + ex.what());
  }
}

ojson report_to_json(const AnalysisReport& report) {
  ojson j;
  j["session"] = report.session;
  j["config"] = report.config;
  ojson events = ojson::array();
  for (const auto& e : report.events) events.push_back(to_json(e));
  j["events"] = std::move(events);
  ojson summaries = ojson::array();
  for (const auto& r : report.summaries) {
    ojson row;
    row["table"] = "intersection";
    row["participant"] = r.participant;
    row["intersection"] = r.intersection;
    row["source"] = std::string(to_string(r.source));
    row["signed_distance"] = r.signed_distance;
    row["timestamp"] = r.timestamp.seconds;
    summaries.push_back(std::move(row));
  }
  for (const auto& c : report.categories) {
    ojson row;
    row["table"] = "pedestrian_category";
    row["category"] = std::string(to_string(c.category));
    row["description"] = c.description;
    row["count"] = c.count;
    row["participants"] = c.participants;
    summaries.push_back(std::move(row));
  }
  j["summaries"] = std::move(summaries);
  ojson versions;
  versions["orclsim"] = library_version();
  versions["log_format"] = std::string(kLogFormatVersion);
  versions["report_format"] = std::string(kReportFormatVersion);
  j["versions"] = std::move(versions);
  return j;
}

AnalysisReport report_from_json(const ojson& j) {
  if (!j.is_object() || !j.contains("events") || !j.contains("session")) {
    throw ConfigError("not a report document");
  }
  AnalysisReport r;
  r.session = j.at("session");
  if (j.contains("config")) r.config = j.at("config");
  for (const auto& e : j.at("events")) r.events.push_back(event_from_json(e));
  return r;
}

void emit_report(const AnalysisReport& report, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());
  write_text_file((dir / "events.csv").string(), events_csv(report.events));
  write_text_file((dir / "summary.csv").string(), summary_csv(report.summaries));
  if (!report.categories.empty()) {
    write_text_file((dir / "categories.csv").string(), categories_csv(report.categories));
  }
  write_text_file((dir / "report.json").string(), report_to_json(report).dump(2) + "\n");
  write_text_file((dir / "scatter.svg").string(), scatter_svg(report.events));
}

}  // namespace orclsim
