#pragma once

// Parsers and writers for the four on-disk log families.
//
// Every family is comma-separated UTF-8 text with '.' as decimal point and
// timestamps in seconds. An optional first line `#schema <family> <version>`
// pins the format version. Pose and gaze logs require a header row; foreign
// headers are adapted with a ColumnMapping. Parsers are lenient: a bad row is
// recorded as a RowError and skipped, so `accepted + errors == total_rows`.

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "orclsim/keyvalue.hpp"
#include "orclsim/model.hpp"

namespace orclsim {

inline constexpr std::string_view kLogFormatVersion = "1";

struct LogSchema {
  std::string family;
  std::string format_version;
  std::vector<std::string> columns;           // required, in canonical order
  std::vector<std::string> optional_columns;  // may be absent from the header
  std::vector<std::string> units;             // parallel to columns
};

const LogSchema& pose_schema();
const LogSchema& gaze_schema();
const LogSchema& watch_schema();
const LogSchema& annotation_schema();

/// Foreign column name -> canonical column name.
struct ColumnMapping {
  std::map<std::string, std::string, std::less<>> rename;

  /// Each entry `foreign = canonical` becomes one rename.
  static ColumnMapping from_config(const KeyValueFile& file);
  std::string_view apply(std::string_view name) const;
};

struct RowError {
  std::size_t line = 0;
  std::string message;
};

struct ParseReport {
  std::string source;
  std::size_t total_rows = 0;
  std::size_t accepted = 0;
  std::vector<RowError> errors;
  std::vector<RowError> warnings;  // accepted rows that were flagged

  double error_fraction() const {
    return total_rows == 0 ? 0.0 : static_cast<double>(errors.size()) / total_rows;
  }
};

struct PoseLog {
  SampleStream<PoseSample> pose;
  SampleStream<VehicleFrame> vehicle;
  ParseReport report;
};

struct GazeLog {
  SampleStream<GazeSample> gaze;
  ParseReport report;
};

struct WatchLog {
  SampleStream<HrSample> heart_rate;
  SampleStream<MotionSample> motion;
  ParseReport report;
};

struct AnnotationLog {
  std::vector<AnnotationEvent> events;
  ParseReport report;
};

/// Throws FormatError for a missing/mismatched header or an unknown schema version.
PoseLog parse_pose_log(std::string_view text, const ColumnMapping& mapping = {},
                       std::string source = "pose");
GazeLog parse_gaze_log(std::string_view text, const ColumnMapping& mapping = {},
                       std::string source = "gaze");
WatchLog parse_watch_log(std::string_view text, std::string source = "watch");
AnnotationLog parse_annotations(std::string_view text, std::string source = "annotations");

std::string serialize_pose_log(const SampleStream<PoseSample>& pose,
                               const SampleStream<VehicleFrame>* vehicle = nullptr);
std::string serialize_gaze_log(const SampleStream<GazeSample>& gaze);
std::string serialize_watch_log(const SampleStream<HrSample>& heart_rate,
                                const SampleStream<MotionSample>* motion = nullptr);
std::string serialize_annotations(const std::vector<AnnotationEvent>& events);

/// Human-readable description of every schema (used by `orclsim schema`).
std::string describe_schemas();

/// Reads a whole file; throws IoError when it cannot be opened.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

}  // namespace orclsim
