#include "orclsim/app.hpp"

#include <algorithm>
#include <cstdlib>
#include <future>
#include <ostream>
#include <thread>

#include <spdlog/spdlog.h>

#include "orclsim/errors.hpp"
#include "orclsim/events.hpp"
#include "orclsim/ingest.hpp"
#include "orclsim/spatial.hpp"
#include "orclsim/synthgen.hpp"

namespace orclsim {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

std::string line_prefix(const KeyValueFile& file, const KeyValueFile::Entry& e) {
  return file.source() + ":" + std::to_string(e.line) + ": ";
}

double require_double(const KeyValueFile& file, const KeyValueFile::Entry& e) {
  const auto v = parse_double(trim(e.value));
  if (!v || !std::isfinite(*v)) {
    throw ConfigError(line_prefix(file, e) + "'" + e.key + "' expects a number");
  }
  return *v;
}

std::uint64_t require_uint(const KeyValueFile& file, const KeyValueFile::Entry& e) {
  const auto v = parse_int(trim(e.value));
  if (!v || *v < 0) {
    throw ConfigError(line_prefix(file, e) + "'" + e.key + "' expects a non-negative integer");
  }
  return static_cast<std::uint64_t>(*v);
}

bool require_bool(const KeyValueFile& file, const KeyValueFile::Entry& e) {
  const auto v = trim(e.value);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError(line_prefix(file, e) + "'" + e.key + "' expects true or false");
}

void check_input(const fs::path& path, std::string_view what) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) {
    throw IoError("missing " + std::string(what) + ": '" + path.string() + "'");
  }
}

void check_quality(const ParseReport& report, double max_fraction) {
  for (const auto& w : report.warnings) {
    spdlog::warn("{}:{}: {}", report.source, w.line, w.message);
  }
  for (const auto& e : report.errors) {
    spdlog::debug("{}:{}: {}", report.source, e.line, e.message);
  }
  if (!report.errors.empty()) {
    spdlog::warn("{}: {} of {} rows rejected", report.source, report.errors.size(),
                 report.total_rows);
  }
  if (report.error_fraction() > max_fraction) {
    const auto& first = report.errors.front();
    throw DataQualityError(report.source + ": " + std::to_string(report.errors.size()) + " of " +
                           std::to_string(report.total_rows) +
                           " rows rejected, above the configured fraction " +
                           format_double(max_fraction) + " (first: line " +
                           std::to_string(first.line) + ": " + first.message + ")");
  }
}

ojson parse_summary(const ParseReport& r) {
  return ojson{{"source", fs::path(r.source).filename().string()},
               {"total_rows", r.total_rows},
               {"accepted", r.accepted},
               {"errors", r.errors.size()},
               {"warnings", r.warnings.size()}};
}

template <class T>
ojson stream_summary(const std::optional<SampleStream<T>>& s) {
  if (!s) return nullptr;
  ojson j;
  j["samples"] = s->samples.size();
  j["nominal_rate"] = s->nominal_rate;
  j["clock_offset"] = s->clock_offset;
  return j;
}

std::vector<double> bpm_series(const SampleStream<HrSample>& hr) {
  std::vector<double> out;
  out.reserve(hr.samples.size());
  for (const auto& s : hr.samples) out.push_back(s.value.bpm);
  return out;
}

}  // namespace

unsigned thread_budget() {
  if (const char* env = std::getenv("ORCLSIM_THREADS")) {
    if (const auto v = parse_int(env); v && *v >= 1) return static_cast<unsigned>(*v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

RunConfig RunConfig::from_config(const KeyValueFile& file, fs::path base_dir) {
  RunConfig c;
  c.base_dir = std::move(base_dir);
  for (const auto& e : file.entries()) {
    const std::string value(trim(e.value));
    const std::string& k = e.key;
    if (k == "session_id") {
      c.session_id = value;
    } else if (k == "participant_id") {
      c.participant_id = value;
    } else if (k == "mode") {
      const auto m = parse_mode(value);
      if (!m) throw ConfigError(line_prefix(file, e) + "unknown mode '" + value + "'");
      c.mode = *m;
    } else if (k == "pose_log") {
      c.pose_log = value;
    } else if (k == "gaze_log") {
      c.gaze_log = value;
    } else if (k == "watch_log") {
      c.watch_log = value;
    } else if (k == "annotations") {
      c.annotations = value;
    } else if (k == "column_mapping") {
      c.column_mapping = value;
    } else if (k == "road_network") {
      c.road_network = value;
    } else if (k == "bcp.gamma") {
      c.bcp.gamma = require_double(file, e);
    } else if (k == "bcp.lambda") {
      c.bcp.lambda = require_double(file, e);
    } else if (k == "bcp.iterations") {
      c.bcp.mcmc_iterations = require_uint(file, e);
    } else if (k == "bcp.burn_in") {
      c.bcp.burn_in = require_uint(file, e);
    } else if (k == "threshold") {
      c.threshold = require_double(file, e);
    } else if (k == "min_separation") {
      c.min_separation = require_uint(file, e);
    } else if (k == "entropy.window") {
      c.entropy.window_s = require_double(file, e);
    } else if (k == "entropy.hop") {
      c.entropy.hop_s = require_double(file, e);
    } else if (k == "entropy.bin_size") {
      c.entropy.bin_size_px = require_double(file, e);
    } else if (k == "entropy.self_transitions") {
      c.entropy.transitions = require_bool(file, e) ? TransitionPolicy::include_self
                                                    : TransitionPolicy::exclude_self;
    } else if (k == "entropy.min_valid_samples") {
      c.entropy.min_valid_samples = require_uint(file, e);
    } else if (k == "entropy.fixation_filter") {
      if (require_bool(file, e)) {
        if (!c.entropy.fixation_filter) c.entropy.fixation_filter = FixationFilter{};
      } else {
        c.entropy.fixation_filter.reset();
      }
    } else if (k == "entropy.fixation_dispersion") {
      if (!c.entropy.fixation_filter) c.entropy.fixation_filter = FixationFilter{};
      c.entropy.fixation_filter->max_dispersion_px = require_double(file, e);
    } else if (k == "entropy.fixation_duration") {
      if (!c.entropy.fixation_filter) c.entropy.fixation_filter = FixationFilter{};
      c.entropy.fixation_filter->min_duration_s = require_double(file, e);
    } else if (k == "camera.fov") {
      c.camera.horizontal_fov_deg = require_double(file, e);
    } else if (k == "camera.width") {
      c.camera.image_width = static_cast<int>(require_uint(file, e));
    } else if (k == "camera.height") {
      c.camera.image_height = static_cast<int>(require_uint(file, e));
    } else if (k == "tolerance") {
      c.tolerance = require_double(file, e);
    } else if (k == "radius") {
      c.radius = require_double(file, e);
    } else if (k == "max_error_fraction") {
      c.max_error_fraction = require_double(file, e);
    } else if (k.rfind("offset.", 0) == 0) {
      c.offsets[k.substr(7)] = require_double(file, e);
    } else if (k == "output") {
      c.output = value;
    } else if (k == "seed") {
      c.seed = require_uint(file, e);
    } else {
      throw ConfigError(line_prefix(file, e) + "unknown key '" + k + "'");
    }
  }
  c.validate();
  return c;
}

RunConfig RunConfig::load(const fs::path& path) {
  check_input(path, "configuration file");
  return from_config(KeyValueFile::load(path.string()), path.parent_path());
}

void RunConfig::validate() const {
  const auto fail = [](const std::string& what) { throw ConfigError("configuration: " + what); };
  try {
    BcpConfig check = bcp;
    check.validate();
    camera.validate();
  } catch (const ArgumentError& e) {
    fail(e.what());
  }
  if (!(threshold > 0.0 && threshold < 1.0)) fail("threshold must be in (0, 1)");
  if (min_separation < 1) fail("min_separation must be at least 1");
  if (!(entropy.window_s > 0.0)) fail("entropy.window must be positive");
  if (!(entropy.hop_s > 0.0)) fail("entropy.hop must be positive");
  if (!(entropy.bin_size_px > 0.0)) fail("entropy.bin_size must be positive");
  if (entropy.fixation_filter && !(entropy.fixation_filter->max_dispersion_px > 0.0 &&
                                   entropy.fixation_filter->min_duration_s > 0.0)) {
    fail("fixation filter parameters must be positive");
  }
  if (!(tolerance > 0.0)) fail("tolerance must be positive");
  if (!(radius > 0.0)) fail("radius must be positive");
  if (!(max_error_fraction >= 0.0 && max_error_fraction <= 1.0)) {
    fail("max_error_fraction must be in [0, 1]");
  }
  for (const auto& [name, offset] : offsets) {
    if (!parse_stream_kind(name)) fail("unknown stream '" + name + "' in offset." + name);
  }
}

fs::path RunConfig::resolve(const std::string& path) const {
  if (path.empty()) return {};
  const fs::path p(path);
  return p.is_absolute() ? p : base_dir / p;
}

ojson RunConfig::to_json() const {
  ojson j;
  j["session_id"] = session_id;
  j["participant_id"] = participant_id;
  j["mode"] = std::string(to_string(mode));
  ojson inputs;
  inputs["pose_log"] = pose_log;
  inputs["gaze_log"] = gaze_log;
  inputs["watch_log"] = watch_log;
  inputs["annotations"] = annotations;
  inputs["column_mapping"] = column_mapping;
  inputs["road_network"] = road_network.empty() ? std::string("<bundled corridor>") : road_network;
  j["inputs"] = std::move(inputs);
  j["bcp"] = ojson{{"gamma", bcp.gamma},
                   {"lambda", bcp.lambda},
                   {"iterations", bcp.mcmc_iterations},
                   {"burn_in", bcp.burn_in}};
  j["threshold"] = threshold;
  j["min_separation"] = min_separation;
  ojson ent;
  ent["window"] = entropy.window_s;
  ent["hop"] = entropy.hop_s;
  ent["bin_size"] = entropy.bin_size_px;
  ent["self_transitions"] = entropy.transitions == TransitionPolicy::include_self;
  ent["min_valid_samples"] = entropy.min_valid_samples;
  if (entropy.fixation_filter) {
    ent["fixation_filter"] = ojson{{"max_dispersion_px", entropy.fixation_filter->max_dispersion_px},
                                   {"min_duration_s", entropy.fixation_filter->min_duration_s}};
  } else {
    ent["fixation_filter"] = nullptr;
  }
  j["entropy"] = std::move(ent);
  j["camera"] = ojson{{"horizontal_fov_deg", camera.horizontal_fov_deg},
                      {"image_width", camera.image_width},
                      {"image_height", camera.image_height},
                      {"projection", "pinhole"}};
  j["tolerance"] = tolerance;
  j["radius"] = radius;
  j["max_error_fraction"] = max_error_fraction;
  ojson offs = ojson::object();
  for (const auto& [name, offset] : offsets) offs[name] = offset;
  j["offsets"] = std::move(offs);
  j["seed"] = seed;
  return j;
}

AnalysisReport analyze(const RunConfig& config) {
  config.validate();
  if (config.watch_log.empty() && config.gaze_log.empty()) {
    throw ConfigError("configuration: neither watch_log nor gaze_log is set");
  }
  // Fail early, naming every missing path.
  std::string missing;
  for (const auto& [key, path] :
       {std::pair<std::string_view, const std::string*>{"pose_log", &config.pose_log},
        {"gaze_log", &config.gaze_log},
        {"watch_log", &config.watch_log},
        {"annotations", &config.annotations},
        {"column_mapping", &config.column_mapping},
        {"road_network", &config.road_network}}) {
    if (path->empty()) continue;
    std::error_code ec;
    if (!fs::is_regular_file(config.resolve(*path), ec)) {
      missing += (missing.empty() ? "" : "; ") + std::string(key) + " '" +
                 config.resolve(*path).string() + "'";
    }
  }
  if (!missing.empty()) throw IoError("missing input: " + missing);

  const RoadNetwork network = RoadNetwork::load(
      config.road_network.empty() ? bundled_corridor_path() : config.resolve(config.road_network).string());
  const ColumnMapping mapping =
      config.column_mapping.empty()
          ? ColumnMapping{}
          : ColumnMapping::from_config(KeyValueFile::load(config.resolve(config.column_mapping).string()));

  SessionRecording session;
  session.session_id = config.session_id;
  session.participant_id = config.participant_id;
  session.mode = config.mode;
  session.road_network_ref = config.road_network;
  ojson parse_reports = ojson::array();

  if (!config.pose_log.empty()) {
    const auto path = config.resolve(config.pose_log).string();
    auto log = parse_pose_log(read_text_file(path), mapping, path);
    check_quality(log.report, config.max_error_fraction);
    parse_reports.push_back(parse_summary(log.report));
    session.pose = std::move(log.pose);
    session.vehicle = std::move(log.vehicle);
  }
  if (!config.gaze_log.empty()) {
    const auto path = config.resolve(config.gaze_log).string();
    auto log = parse_gaze_log(read_text_file(path), mapping, path);
    check_quality(log.report, config.max_error_fraction);
    parse_reports.push_back(parse_summary(log.report));
    session.gaze = std::move(log.gaze);
  }
  if (!config.watch_log.empty()) {
    const auto path = config.resolve(config.watch_log).string();
    auto log = parse_watch_log(read_text_file(path), path);
    check_quality(log.report, config.max_error_fraction);
    parse_reports.push_back(parse_summary(log.report));
    session.heart_rate = std::move(log.heart_rate);
    session.motion = std::move(log.motion);
  }
  if (!config.annotations.empty()) {
    const auto path = config.resolve(config.annotations).string();
    auto log = parse_annotations(read_text_file(path), path);
    check_quality(log.report, config.max_error_fraction);
    parse_reports.push_back(parse_summary(log.report));
    session.annotations = std::move(log.events);
  }

  ClockOffsets offsets;
  for (const auto& [name, offset] : config.offsets) {
    const auto kind = parse_stream_kind(name);
    if (kind && session.has(*kind)) offsets[name] = offset;
    else spdlog::warn("offset for '{}' ignored: stream not loaded", name);
  }
  session = synchronize(session, offsets);

  BcpConfig bcp = config.bcp;
  bcp.seed = config.seed;

  // HR change points and the entropy pass are independent.
  const auto run_hr = [&]() -> std::optional<BcpResult> {
    if (!session.heart_rate || session.heart_rate->samples.size() < 2) return std::nullopt;
    return bcp_detect(bpm_series(*session.heart_rate), bcp);
  };
  const bool have_gaze = session.gaze && !session.gaze->samples.empty();
  const auto run_entropy = [&]() -> std::optional<EntropySeries> {
    if (!have_gaze) return std::nullopt;
    if (rolling_window_count(*session.gaze, config.entropy) == 0) return EntropySeries{};
    return rolling_entropy(*session.gaze, config.camera, config.entropy, bcp);
  };
  std::optional<BcpResult> hr_result;
  std::optional<EntropySeries> entropy;
  if (thread_budget() > 1) {
    auto hr_future = std::async(std::launch::async, run_hr);
    entropy = run_entropy();
    hr_result = hr_future.get();
  } else {
    hr_result = run_hr();
    entropy = run_entropy();
  }

  std::vector<ChangeEvent> hr_events;
  std::vector<ChangeEvent> sge_events;
  std::vector<ChangeEvent> gte_events;
  if (hr_result) {
    const auto times = timestamps_of(*session.heart_rate);
    hr_events = change_events_at(
        extract_change_events(*hr_result, config.threshold, config.min_separation),
        hr_result->probabilities, times);
  }
  std::size_t gap_windows = 0;
  if (entropy) {
    for (const auto& v : entropy->sge) gap_windows += v ? 0 : 1;
    std::vector<Timestamp> window_times;
    for (const std::size_t k : entropy->bcp_index) window_times.push_back(entropy->timestamps[k]);
    if (!entropy->sge_bcp.probabilities.empty()) {
      sge_events = change_events_at(
          extract_change_events(entropy->sge_bcp, config.threshold, config.min_separation),
          entropy->sge_bcp.probabilities, window_times);
      gte_events = change_events_at(
          extract_change_events(entropy->gte_bcp, config.threshold, config.min_separation),
          entropy->gte_bcp.probabilities, window_times);
    }
  }

  const std::vector<AnnotationEvent> no_annotations;
  AnalysisReport report;
  report.events = correlate(hr_events, sge_events, gte_events,
                            session.annotations ? *session.annotations : no_annotations,
                            config.tolerance, config.participant_id);
  if (session.pose) locate_events(report.events, *session.pose, network);
  report.summaries = summarize_by_intersection(report.events, network, config.radius);
  if (config.mode == Mode::pedestrian) {
    report.categories = categorize_pedestrian_events(report.events);
  }

  ojson s;
  s["id"] = config.session_id;
  s["participant"] = config.participant_id;
  s["mode"] = std::string(to_string(config.mode));
  s["road_network_length"] = network.length();
  s["streams"] = ojson{{"pose", stream_summary(session.pose)},
                       {"gaze", stream_summary(session.gaze)},
                       {"heart_rate", stream_summary(session.heart_rate)},
                       {"motion", stream_summary(session.motion)},
                       {"vehicle", stream_summary(session.vehicle)},
                       {"annotations", session.annotations
                                           ? ojson(session.annotations->size())
                                           : ojson(nullptr)}};
  s["parse"] = std::move(parse_reports);
  if (hr_result) {
    s["heart_rate"] = ojson{{"status", "computed"},
                            {"samples", hr_result->input_length},
                            {"change_points", hr_events.size()}};
  } else {
    s["heart_rate"] = ojson{{"status", "absent"}};
  }
  if (entropy) {
    ojson sge = ojson::array();
    ojson gte = ojson::array();
    for (std::size_t k = 0; k < entropy->timestamps.size(); ++k) {
      sge.push_back(entropy->sge[k] ? ojson(*entropy->sge[k]) : ojson(nullptr));
      gte.push_back(entropy->gte[k] ? ojson(*entropy->gte[k]) : ojson(nullptr));
    }
    ojson ends = ojson::array();
    for (const auto& t : entropy->timestamps) ends.push_back(t.seconds);
    s["entropy"] = ojson{{"status", "computed"},
                         {"windows", entropy->timestamps.size()},
                         {"gap_windows", gap_windows},
                         {"sge_change_points", sge_events.size()},
                         {"gte_change_points", gte_events.size()},
                         {"window_end", std::move(ends)},
                         {"sge", std::move(sge)},
                         {"gte", std::move(gte)}};
  } else {
    s["entropy"] = ojson{{"status", "absent"}};
  }
  report.session = std::move(s);
  report.config = config.to_json();
  spdlog::info("{}: {} HR, {} SGE, {} GTE change points", config.session_id, hr_events.size(),
               sge_events.size(), gte_events.size());
  return report;
}

int cmd_analyze(const RunConfig& config, const fs::path& out_dir, std::ostream& diag) {
  try {
    const AnalysisReport report = analyze(config);
    emit_report(report, out_dir);
    spdlog::info("report written to {}", out_dir.string());
    return kExitOk;
  } catch (const DataQualityError& e) {
    diag << "error: " << e.what() << '\n';
    return kExitDataQuality;
  } catch (const FormatError& e) {
    diag << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const IoError& e) {
    diag << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const ConfigError& e) {
    diag << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const ArgumentError& e) {
    diag << "error: " << e.what() << '\n';
    return kExitInputError;
  }
}

int cmd_simulate(const fs::path& scenario_path, const fs::path& out_dir,
                 std::optional<std::uint64_t> seed, std::ostream& diag,
                 const fs::path& road_network) {
  try {
    check_input(scenario_path, "scenario");
    Scenario scenario = Scenario::load(scenario_path.string());
    if (seed) scenario.seed = *seed;
    const RoadNetwork network = RoadNetwork::load(
        road_network.empty() ? bundled_corridor_path() : road_network.string());
    const GeneratedSession generated = generate_session(scenario, network);
    write_session_files(generated, scenario, network, out_dir);
    spdlog::info("session written to {}", out_dir.string());
    return kExitOk;
  } catch (const IoError& e) {
    diag << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const FormatError& e) {
    diag << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const ConfigError& e) {
    diag << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const ArgumentError& e) {
    diag << "error: invalid scenario: " << e.what() << '\n';
    return kExitInputError;
  }
}

AnalysisReport aggregate_reports(std::span<const fs::path> reports, const RoadNetwork& network,
                                 double radius) {
  AnalysisReport merged;
  ojson sessions = ojson::array();
  bool pedestrian = false;
  for (const auto& path : reports) {
    ojson doc;
    try {
      doc = ojson::parse(read_text_file(path.string()));
    } catch (const nlohmann::json::parse_error& e) {
      throw FormatError(path.string(), 1, std::string("not valid JSON: ") + e.what());
    }
    AnalysisReport one = report_from_json(doc);
    sessions.push_back(one.session);
    if (one.session.value("mode", "") == "pedestrian") pedestrian = true;
    for (auto& e : one.events) merged.events.push_back(std::move(e));
  }
  std::stable_sort(merged.events.begin(), merged.events.end(),
                   [](const CorrelatedEvent& a, const CorrelatedEvent& b) {
                     return std::tie(a.participant, a.timestamp, a.source) <
                            std::tie(b.participant, b.timestamp, b.source);
                   });
  merged.summaries = summarize_by_intersection(merged.events, network, radius);
  if (pedestrian) merged.categories = categorize_pedestrian_events(merged.events);
  merged.session = ojson{{"id", "aggregate"}, {"sessions", std::move(sessions)}};
  merged.config = ojson{{"radius", radius}, {"reports", reports.size()}};
  return merged;
}

int cmd_report(std::span<const fs::path> reports, const fs::path& out_dir,
               const fs::path& road_network, double radius, std::ostream& diag) {
  try {
    if (reports.empty()) throw ConfigError("report: no report files given");
    for (const auto& r : reports) check_input(r, "report");
    const RoadNetwork network = RoadNetwork::load(
        road_network.empty() ? bundled_corridor_path() : road_network.string());
    emit_report(aggregate_reports(reports, network, radius), out_dir);
    return kExitOk;
  } catch (const IoError& e) {
    diag << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const FormatError& e) {
    diag << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const ConfigError& e) {
    diag << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const ArgumentError& e) {
    diag << "error: " << e.what() << '\n';
    return kExitInputError;
  }
}

std::string schema_text() {
  std::string out = "Log formats (comma-separated, optional first line '#schema <family> <version>')\n\n";
  out += describe_schemas();
  out +=
      "\nRoad network (whitespace-delimited)\n"
      "  orcl-road v1        header\n"
      "  V x y z             centerline vertex, m, y up\n"
      "  S name s0 s1 grade  segment over arclength [s0, s1), grade in percent\n"
      "  I name s            intersection at arclength s\n"
      "\nAnalysis configuration (key = value; paths relative to the file)\n"
      "  session_id, participant_id, mode (bicyclist|pedestrian)\n"
      "  pose_log, gaze_log, watch_log, annotations, column_mapping, road_network\n"
      "  bcp.gamma, bcp.lambda, bcp.iterations, bcp.burn_in, threshold, min_separation\n"
      "  entropy.window, entropy.hop, entropy.bin_size, entropy.self_transitions,\n"
      "  entropy.min_valid_samples, entropy.fixation_filter, entropy.fixation_dispersion,\n"
      "  entropy.fixation_duration, camera.fov, camera.width, camera.height\n"
      "  tolerance, radius, max_error_fraction, offset.<stream>, output, seed\n"
      "\nScenario (key = value)\n"
      "  session_id, participant_id, mode, speed, start_arclength, duration\n"
      "  hr_baseline, hr_noise, hr_shift = <intersection> <offset m> <delta bpm>,\n"
      "  hr_shift_at = <arclength m> <delta bpm>, scan_episode = <start s> <duration s> <bins>\n"
      "  gaze_jitter_deg, scan_dwell, gaze_dropout, headway_gaps = <s> ..., vehicle_speed,\n"
      "  vehicle_lane_offset, timestamp_jitter, watch_epoch, auto_annotations,\n"
      "  annotation = <t> <category> <label>, seed\n";
  return out;
}

}  // namespace orclsim
