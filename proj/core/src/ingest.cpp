#include "orclsim/ingest.hpp"

#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

#include <fmt/format.h>

#include "orclsim/errors.hpp"

namespace orclsim {

namespace {

constexpr double kDefaultPoseRate = 30.0;
constexpr double kDefaultGazeRate = 120.0;
constexpr double kDefaultHrRate = 1.0;
constexpr double kDefaultMotionRate = 10.0;

class LineCursor {
 public:
  explicit LineCursor(std::string_view text) : text_(text) {}

  /// Next non-blank line. Comment lines are returned too; callers decide.
  bool next(std::string_view& line, std::size_t& line_no) {
    while (pos_ <= text_.size()) {
      if (pos_ == text_.size()) {
        pos_ = text_.size() + 1;
        return false;
      }
      auto end = text_.find('\n', pos_);
      if (end == std::string_view::npos) end = text_.size();
      auto raw = text_.substr(pos_, end - pos_);
      pos_ = end + 1;
      ++line_no_;
      if (line_no_ == 1 && raw.starts_with("\xEF\xBB\xBF")) raw.remove_prefix(3);  // BOM
      const auto trimmed = trim(raw);
      if (trimmed.empty()) continue;
      line = trimmed;
      line_no = line_no_;
      return true;
    }
    return false;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_no_ = 0;
};

bool is_comment(std::string_view line) { return line.front() == '#'; }

/// Handles a `#schema family version` directive; other comments are ignored.
void check_directive(std::string_view line, std::size_t line_no, const LogSchema& schema,
                     const std::string& source) {
  const auto words = split_whitespace(line.substr(1));
  if (words.empty() || words[0] != "schema") return;
  if (words.size() != 3) throw FormatError(source, line_no, "malformed #schema directive");
  if (words[1] != schema.family) {
    throw FormatError(source, line_no,
                      fmt::format("schema family '{}' where '{}' was expected", words[1],
                                  schema.family));
  }
  if (words[2] != schema.format_version) {
    throw FormatError(source, line_no,
                      fmt::format("unrecognized {} schema version '{}'", schema.family, words[2]));
  }
}

struct Header {
  std::map<std::string, std::size_t, std::less<>> index;
  std::size_t width = 0;
  std::size_t line = 0;

  std::size_t at(std::string_view name) const { return index.find(name)->second; }
  bool has(std::string_view name) const { return index.contains(name); }
};

/// Reads leading comments and the header row. Throws FormatError when the
/// header is absent or lacks a required column.
Header read_header(LineCursor& cursor, const LogSchema& schema, const ColumnMapping& mapping,
                   const std::string& source) {
  std::string_view line;
  std::size_t line_no = 0;
  while (cursor.next(line, line_no)) {
    if (is_comment(line)) {
      check_directive(line, line_no, schema, source);
      continue;
    }
    Header header;
    header.line = line_no;
    const auto names = split(line, ',');
    header.width = names.size();
    for (std::size_t i = 0; i < names.size(); ++i) {
      header.index.emplace(std::string(mapping.apply(trim(names[i]))), i);
    }
    for (const auto& col : schema.columns) {
      if (!header.has(col)) {
        throw FormatError(source, line_no,
                          fmt::format("{} header is missing column '{}'", schema.family, col));
      }
    }
    return header;
  }
  throw FormatError(source, line_no == 0 ? 1 : line_no,
                    fmt::format("missing {} header row", schema.family));
}

/// Row-level failure; caught per row and turned into a RowError.
struct RowFailure {
  std::string message;
};

double number_field(const std::vector<std::string_view>& fields, std::size_t i,
                    std::string_view name) {
  const auto v = parse_double(fields[i]);
  if (!v) throw RowFailure{fmt::format("non-numeric field '{}' in column {}", trim(fields[i]), name)};
  return *v;
}

double finite_field(const std::vector<std::string_view>& fields, std::size_t i,
                    std::string_view name) {
  const double v = number_field(fields, i, name);
  if (!std::isfinite(v)) throw RowFailure{fmt::format("non-finite value in column {}", name)};
  return v;
}

double infer_rate(const std::vector<double>& times, double fallback) {
  if (times.size() < 2) return fallback;
  const double span = times.back() - times.front();
  if (!(span > 0.0)) return fallback;
  return static_cast<double>(times.size() - 1) / span;
}

template <class T>
double infer_rate(const SampleStream<T>& stream, double fallback) {
  std::vector<double> times;
  times.reserve(stream.samples.size());
  for (const auto& s : stream.samples) times.push_back(s.t.seconds);
  std::sort(times.begin(), times.end());
  return infer_rate(times, fallback);
}

void record_error(ParseReport& report, std::size_t line, std::string message) {
  report.errors.push_back({line, std::move(message)});
}

std::string vec_fields(Vec3 v) {
  return fmt::format("{},{},{}", format_double(v.x), format_double(v.y), format_double(v.z));
}

struct VehicleTag {
  int id = 0;
  int model = 0;
};

/// `vehicle/<id>/<model>`; std::nullopt for the participant (`ego` or empty).
std::optional<VehicleTag> parse_object_tag(std::string_view tag) {
  tag = trim(tag);
  if (tag.empty() || tag == "ego") return std::nullopt;
  const auto parts = split(tag, '/');
  if (parts.size() != 3 || parts[0] != "vehicle") {
    throw RowFailure{fmt::format("unrecognized object tag '{}'", tag)};
  }
  const auto id = parse_int(parts[1]);
  const auto model = parse_int(parts[2]);
  if (!id || !model || *model < 0) throw RowFailure{fmt::format("malformed vehicle tag '{}'", tag)};
  return VehicleTag{static_cast<int>(*id), static_cast<int>(*model)};
}

}  // namespace

const LogSchema& pose_schema() {
  static const LogSchema schema{
      "pose",
      std::string(kLogFormatVersion),
      {"t", "x", "y", "z", "fx", "fy", "fz", "trigger", "speed"},
      {"object"},
      {"s", "m", "m", "m", "unit", "unit", "unit", "[0,1]", "m/s"},
  };
  return schema;
}

const LogSchema& gaze_schema() {
  static const LogSchema schema{
      "gaze",
      std::string(kLogFormatVersion),
      {"t", "ox", "oy", "oz", "l_dx", "l_dy", "l_dz", "l_pupil", "r_dx", "r_dy", "r_dz",
       "r_pupil"},
      {},
      {"s", "m", "m", "m", "unit", "unit", "unit", "mm", "unit", "unit", "unit", "mm"},
  };
  return schema;
}

const LogSchema& watch_schema() {
  static const LogSchema schema{
      "watch",
      std::string(kLogFormatVersion),
      {"record", "t", "v1", "v2", "v3"},
      {},
      {"HR|ACC|GYR|AUD", "s", "bpm|m/s^2|rad/s|amplitude", "m/s^2|rad/s", "m/s^2|rad/s"},
  };
  return schema;
}

const LogSchema& annotation_schema() {
  static const LogSchema schema{
      "annotations",
      std::string(kLogFormatVersion),
      {"t", "category", "label"},
      {},
      {"s", "enum", "text"},
  };
  return schema;
}

ColumnMapping ColumnMapping::from_config(const KeyValueFile& file) {
  ColumnMapping mapping;
  for (const auto& e : file.entries()) mapping.rename[e.key] = e.value;
  return mapping;
}

std::string_view ColumnMapping::apply(std::string_view name) const {
  const auto it = rename.find(name);
  return it == rename.end() ? name : std::string_view(it->second);
}

PoseLog parse_pose_log(std::string_view text, const ColumnMapping& mapping, std::string source) {
  LineCursor cursor(text);
  const auto& schema = pose_schema();
  const Header header = read_header(cursor, schema, mapping, source);
  const bool has_object = header.has("object");

  PoseLog log;
  log.report.source = source;
  log.pose.kind = StreamKind::pose;
  log.vehicle.kind = StreamKind::vehicle;
  std::map<double, VehicleFrame> frames;

  std::string_view line;
  std::size_t line_no = 0;
  while (cursor.next(line, line_no)) {
    if (is_comment(line)) continue;
    ++log.report.total_rows;
    try {
      const auto fields = split(line, ',');
      const bool short_row = has_object && fields.size() + 1 == header.width;
      if (fields.size() != header.width && !short_row) {
        throw RowFailure{
            fmt::format("expected {} fields, got {}", header.width, fields.size())};
      }
      const auto col = [&](std::string_view name) {
        const double v = finite_field(fields, header.at(name), name);
        return v;
      };
      const double t = col("t");
      const Vec3 pos{col("x"), col("y"), col("z")};
      const Vec3 fwd{col("fx"), col("fy"), col("fz")};
      const double trigger = col("trigger");
      const double speed = col("speed");
      if (!is_unit(fwd)) throw RowFailure{"non-unit direction"};

      std::optional<VehicleTag> tag;
      if (has_object && !short_row) tag = parse_object_tag(fields[header.at("object")]);
      if (tag) {
        frames[t].vehicles.push_back({tag->id, tag->model, pos, fwd, speed});
      } else {
        if (trigger < 0.0 || trigger > 1.0) throw RowFailure{"trigger outside [0, 1]"};
        log.pose.samples.push_back({{t}, {pos, fwd, trigger, speed}});
      }
      ++log.report.accepted;
    } catch (const RowFailure& f) {
      record_error(log.report, line_no, f.message);
    }
  }
  for (auto& [t, frame] : frames) log.vehicle.samples.push_back({{t}, std::move(frame)});
  log.pose.nominal_rate = infer_rate(log.pose, kDefaultPoseRate);
  log.vehicle.nominal_rate = infer_rate(log.vehicle, kDefaultPoseRate);
  return log;
}

GazeLog parse_gaze_log(std::string_view text, const ColumnMapping& mapping, std::string source) {
  LineCursor cursor(text);
  const Header header = read_header(cursor, gaze_schema(), mapping, source);

  GazeLog log;
  log.report.source = source;
  log.gaze.kind = StreamKind::gaze;

  std::string_view line;
  std::size_t line_no = 0;
  while (cursor.next(line, line_no)) {
    if (is_comment(line)) continue;
    ++log.report.total_rows;
    try {
      const auto fields = split(line, ',');
      if (fields.size() != header.width) {
        throw RowFailure{
            fmt::format("expected {} fields, got {}", header.width, fields.size())};
      }
      const auto num = [&](std::string_view name) {
        return number_field(fields, header.at(name), name);
      };
      const double t = finite_field(fields, header.at("t"), "t");
      // An eye is valid only when all of its fields are finite; "NaN" is the dropout sentinel.
      const auto eye = [&](std::string_view side) {
        const std::string p(side);
        EyeSample e;
        e.direction = {num(p + "_dx"), num(p + "_dy"), num(p + "_dz")};
        e.pupil_diameter_mm = num(p + "_pupil");
        e.valid = is_finite(e.direction) && std::isfinite(e.pupil_diameter_mm);
        if (e.valid) {
          if (!is_unit(e.direction)) throw RowFailure{"non-unit direction (" + p + " eye)"};
          if (!(e.pupil_diameter_mm > 0.0)) {
            throw RowFailure{"non-positive pupil diameter (" + p + " eye)"};
          }
        } else {
          e.direction = {0.0, 0.0, 1.0};
          e.pupil_diameter_mm = 0.0;
        }
        return e;
      };
      GazeSample g;
      g.left = eye("l");
      g.right = eye("r");
      g.origin = {num("ox"), num("oy"), num("oz")};
      if (!is_finite(g.origin)) {
        if (g.left.valid || g.right.valid) throw RowFailure{"non-finite gaze origin"};
        g.origin = {};
      }
      log.gaze.samples.push_back({{t}, g});
      ++log.report.accepted;
    } catch (const RowFailure& f) {
      record_error(log.report, line_no, f.message);
    }
  }
  log.gaze.nominal_rate = infer_rate(log.gaze, kDefaultGazeRate);
  return log;
}

WatchLog parse_watch_log(std::string_view text, std::string source) {
  LineCursor cursor(text);
  WatchLog log;
  log.report.source = source;
  log.heart_rate.kind = StreamKind::heart_rate;
  log.motion.kind = StreamKind::motion;
  std::map<double, MotionSample> motion;

  std::string_view line;
  std::size_t line_no = 0;
  bool first_row = true;
  while (cursor.next(line, line_no)) {
    if (is_comment(line)) {
      if (first_row) check_directive(line, line_no, watch_schema(), source);
      continue;
    }
    const auto fields = split(line, ',');
    if (first_row) {
      first_row = false;
      if (trim(fields[0]) == "record") continue;  // optional header row
    }
    ++log.report.total_rows;
    try {
      const auto type = trim(fields[0]);
      const auto expect = [&](std::size_t n) {
        if (fields.size() != n) {
          throw RowFailure{fmt::format("{} record expects {} fields, got {}", type, n,
                                       fields.size())};
        }
      };
      if (fields.size() < 2) throw RowFailure{"record has no timestamp"};
      const double t = finite_field(fields, 1, "t");
      if (type == "HR") {
        expect(3);
        const double bpm = finite_field(fields, 2, "bpm");
        const HrSample hr{bpm};
        if (!hr.plausible()) {
          log.report.warnings.push_back(
              {line_no, fmt::format("heart rate {} bpm outside [{}, {}]", format_double(bpm),
                                    kMinPlausibleBpm, kMaxPlausibleBpm)});
        }
        log.heart_rate.samples.push_back({{t}, hr});
      } else if (type == "ACC" || type == "GYR") {
        expect(5);
        const Vec3 v{finite_field(fields, 2, "x"), finite_field(fields, 3, "y"),
                     finite_field(fields, 4, "z")};
        auto& m = motion[t];
        (type == "ACC" ? m.acceleration : m.gyroscope) = v;
      } else if (type == "AUD") {
        expect(3);
        motion[t].audio_amplitude = finite_field(fields, 2, "amplitude");
      } else {
        throw RowFailure{fmt::format("unknown record type '{}'", type)};
      }
      ++log.report.accepted;
    } catch (const RowFailure& f) {
      record_error(log.report, line_no, f.message);
    }
  }
  for (auto& [t, m] : motion) log.motion.samples.push_back({{t}, std::move(m)});
  log.heart_rate.nominal_rate = infer_rate(log.heart_rate, kDefaultHrRate);
  log.motion.nominal_rate = infer_rate(log.motion, kDefaultMotionRate);
  return log;
}

AnnotationLog parse_annotations(std::string_view text, std::string source) {
  LineCursor cursor(text);
  AnnotationLog log;
  log.report.source = source;

  std::string_view line;
  std::size_t line_no = 0;
  bool first_row = true;
  while (cursor.next(line, line_no)) {
    if (is_comment(line)) {
      if (first_row) check_directive(line, line_no, annotation_schema(), source);
      continue;
    }
    const auto c1 = line.find(',');
    if (first_row) {
      first_row = false;
      if (trim(line.substr(0, c1)) == "t") continue;  // optional header row
    }
    ++log.report.total_rows;
    try {
      const auto c2 = c1 == std::string_view::npos ? c1 : line.find(',', c1 + 1);
      if (c2 == std::string_view::npos) throw RowFailure{"expected 't,category,label'"};
      const auto t = parse_double(line.substr(0, c1));
      if (!t || !std::isfinite(*t)) {
        throw RowFailure{fmt::format("unparseable timestamp '{}'", trim(line.substr(0, c1)))};
      }
      AnnotationEvent event;
      event.timestamp = {*t};
      event.category = parse_annotation_category(trim(line.substr(c1 + 1, c2 - c1 - 1)));
      event.label = std::string(trim(line.substr(c2 + 1)));
      if (event.label.empty()) throw RowFailure{"empty annotation label"};
      log.events.push_back(std::move(event));
      ++log.report.accepted;
    } catch (const RowFailure& f) {
      record_error(log.report, line_no, f.message);
    }
  }
  std::stable_sort(log.events.begin(), log.events.end(),
                   [](const auto& a, const auto& b) { return a.timestamp < b.timestamp; });
  return log;
}

std::string serialize_pose_log(const SampleStream<PoseSample>& pose,
                               const SampleStream<VehicleFrame>* vehicle) {
  std::string out = fmt::format("#schema pose {}\n", kLogFormatVersion);
  out += "t,x,y,z,fx,fy,fz,trigger,speed,object\n";
  const auto pose_row = [&](const TimedSample<PoseSample>& s) {
    out += fmt::format("{},{},{},{},{},ego\n", format_double(s.t.seconds),
                       vec_fields(s.value.head_position), vec_fields(s.value.head_forward),
                       format_double(s.value.controller_trigger), format_double(s.value.speed));
  };
  const auto vehicle_rows = [&](const TimedSample<VehicleFrame>& f) {
    for (const auto& v : f.value.vehicles) {
      out += fmt::format("{},{},{},0,{},vehicle/{}/{}\n", format_double(f.t.seconds),
                         vec_fields(v.position), vec_fields(v.forward), format_double(v.speed),
                         v.vehicle_id, v.model_class);
    }
  };
  std::size_t j = 0;
  for (const auto& s : pose.samples) {
    while (vehicle && j < vehicle->samples.size() && vehicle->samples[j].t < s.t) {
      vehicle_rows(vehicle->samples[j++]);
    }
    pose_row(s);
  }
  while (vehicle && j < vehicle->samples.size()) vehicle_rows(vehicle->samples[j++]);
  return out;
}

std::string serialize_gaze_log(const SampleStream<GazeSample>& gaze) {
  std::string out = fmt::format("#schema gaze {}\n", kLogFormatVersion);
  out += "t,ox,oy,oz,l_dx,l_dy,l_dz,l_pupil,r_dx,r_dy,r_dz,r_pupil\n";
  const auto eye = [](const EyeSample& e) {
    if (!e.valid) return std::string("NaN,NaN,NaN,NaN");
    return fmt::format("{},{}", vec_fields(e.direction), format_double(e.pupil_diameter_mm));
  };
  for (const auto& s : gaze.samples) {
    out += fmt::format("{},{},{},{}\n", format_double(s.t.seconds), vec_fields(s.value.origin),
                       eye(s.value.left), eye(s.value.right));
  }
  return out;
}

std::string serialize_watch_log(const SampleStream<HrSample>& heart_rate,
                                const SampleStream<MotionSample>* motion) {
  std::string out = fmt::format("#schema watch {}\n", kLogFormatVersion);
  out += "record,t,v1,v2,v3\n";
  const auto hr_row = [&](const TimedSample<HrSample>& s) {
    out += fmt::format("HR,{},{}\n", format_double(s.t.seconds), format_double(s.value.bpm));
  };
  const auto motion_rows = [&](const TimedSample<MotionSample>& s) {
    const auto t = format_double(s.t.seconds);
    if (s.value.acceleration) out += fmt::format("ACC,{},{}\n", t, vec_fields(*s.value.acceleration));
    if (s.value.gyroscope) out += fmt::format("GYR,{},{}\n", t, vec_fields(*s.value.gyroscope));
    if (s.value.audio_amplitude) {
      out += fmt::format("AUD,{},{}\n", t, format_double(*s.value.audio_amplitude));
    }
  };
  std::size_t j = 0;
  for (const auto& s : heart_rate.samples) {
    while (motion && j < motion->samples.size() && motion->samples[j].t < s.t) {
      motion_rows(motion->samples[j++]);
    }
    hr_row(s);
  }
  while (motion && j < motion->samples.size()) motion_rows(motion->samples[j++]);
  return out;
}

std::string serialize_annotations(const std::vector<AnnotationEvent>& events) {
  std::string out = fmt::format("#schema annotations {}\n", kLogFormatVersion);
  out += "t,category,label\n";
  for (const auto& e : events) {
    out += fmt::format("{},{},{}\n", format_double(e.timestamp.seconds), to_string(e.category),
                       e.label);
  }
  return out;
}

std::string describe_schemas() {
  std::string out;
  for (const LogSchema* schema : {&pose_schema(), &gaze_schema(), &watch_schema(),
                                  &annotation_schema()}) {
    out += fmt::format("{} (version {})\n", schema->family, schema->format_version);
    for (std::size_t i = 0; i < schema->columns.size(); ++i) {
      out += fmt::format("  {:<10} {}\n", schema->columns[i], schema->units[i]);
    }
    for (const auto& c : schema->optional_columns) out += fmt::format("  {:<10} optional\n", c);
  }
  out +=
      "pose.object: 'ego' (or empty) for the participant, 'vehicle/<id>/<model>' for traffic\n"
      "watch.record: HR,t,bpm | ACC,t,x,y,z | GYR,t,x,y,z | AUD,t,amplitude\n"
      "gaze: an eye whose fields are NaN is recorded as invalid\n";
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path + "'");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("write failed for '" + path + "'");
}

}  // namespace orclsim
