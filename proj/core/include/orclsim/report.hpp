#pragma once

// Report files for one analysis (or an aggregate of several):
//   events.csv   every correlated change event
//   summary.csv  per-intersection attribution rows
//   report.json  {session, config, events, summaries, versions}
//   scatter.svg  signed distance per participant and source, one mark per event

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "orclsim/events.hpp"

namespace orclsim {

inline constexpr std::string_view kReportFormatVersion = "1";

struct AnalysisReport {
  nlohmann::ordered_json session = nlohmann::ordered_json::object();
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  std::vector<CorrelatedEvent> events;
  std::vector<SummaryRow> summaries;
  std::vector<CategoryRow> categories;
};

std::string library_version();

std::string events_csv(std::span<const CorrelatedEvent> events);
std::string summary_csv(std::span<const SummaryRow> rows);
std::string categories_csv(std::span<const CategoryRow> rows);
std::string scatter_svg(std::span<const CorrelatedEvent> events);

nlohmann::ordered_json to_json(const CorrelatedEvent& event);
CorrelatedEvent event_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json report_to_json(const AnalysisReport& report);
/// Reads back the events, session and config of a report.json document.
AnalysisReport report_from_json(const nlohmann::ordered_json& j);

/// Writes the report files into `dir` (created if missing). Category rows
/// additionally go to categories.csv when present.
/// Throws IoError when a file cannot be written.
void emit_report(const AnalysisReport& report, const std::filesystem::path& dir);

}  // namespace orclsim
