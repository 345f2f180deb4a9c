#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "orclsim/app.hpp"
#include "orclsim/ingest.hpp"
#include "orclsim/synthgen.hpp"
#include "scratch.hpp"

using namespace orclsim;
using testing_support::scratch_dir;
using testing_support::slurp;
using testing_support::spit;

namespace fs = std::filesystem;

namespace {

const char* kZeroNoiseScenario =
    "session_id = zero-noise\n"
    "participant_id = 2\n"
    "mode = bicyclist\n"
    "speed = 3\n"
    "start_arclength = 150\n"
    "duration = 50\n"
    "hr_baseline = 72\n"
    "hr_noise = 0\n"
    "hr_shift = intersection_2 -15 25\n"
    "hr_shift = intersection_2 5 -15\n"
    "gaze_jitter_deg = 0\n"
    "seed = 3\n";

fs::path simulate(const std::string& name, const std::string& scenario = kZeroNoiseScenario) {
  const auto dir = scratch_dir(name);
  spit(dir / "ride.scenario", scenario);
  std::ostringstream diag;
  EXPECT_EQ(cmd_simulate(dir / "ride.scenario", dir / "session", std::nullopt, diag), kExitOk)
      << diag.str();
  return dir / "session";
}

}  // namespace

TEST(Simulate, RoundTripRecoversEveryShift) {
  const auto session = simulate("roundtrip");
  const auto config = RunConfig::load(session / "analyze.cfg");
  const auto report = analyze(config);
  const auto manifest = nlohmann::json::parse(slurp(session / "manifest.json"));
  const auto& shifts = manifest["ground_truth"]["hr_shifts"];
  ASSERT_EQ(shifts.size(), 2u);
  for (const auto& s : shifts) {
    const double t = s["time"].get<double>();
    bool found = false;
    for (const auto& e : report.events) {
      if (e.source == EventSource::hr && std::abs(e.timestamp.seconds - t) <= 2.0) found = true;
    }
    EXPECT_TRUE(found) << "no HR change point near t=" << t;
  }
  EXPECT_EQ(report.session["entropy"]["status"], "computed");
}

TEST(Simulate, BundledScenarioAnalyzes) {
  const auto dir = scratch_dir("bundled");
  std::ostringstream diag;
  ASSERT_EQ(cmd_simulate(bundled_scenario_path(), dir / "session", std::nullopt, diag), kExitOk);
  const auto config = RunConfig::load(dir / "session" / "analyze.cfg");
  EXPECT_EQ(cmd_analyze(config, dir / "out", diag), kExitOk) << diag.str();
  EXPECT_TRUE(fs::exists(dir / "out" / "report.json"));
}

TEST(Simulate, ZeroDurationWritesValidEmptyLogs) {
  std::string sc = kZeroNoiseScenario;
  sc.replace(sc.find("duration = 50"), 13, "duration = 0");
  sc.erase(sc.find("hr_shift"), sc.find("gaze_jitter") - sc.find("hr_shift"));
  const auto session = simulate("zero", sc);
  const auto pose = parse_pose_log(slurp(session / "pose.csv"));
  EXPECT_TRUE(pose.pose.samples.empty());
  EXPECT_TRUE(pose.report.errors.empty());
  EXPECT_TRUE(parse_gaze_log(slurp(session / "gaze.csv")).gaze.samples.empty());
  EXPECT_TRUE(parse_watch_log(slurp(session / "watch.csv")).heart_rate.samples.empty());
}

TEST(Simulate, InvalidScenarioExitsTwo) {
  const auto dir = scratch_dir("bad-scenario");
  spit(dir / "bad.scenario", "speed = -1\n");
  std::ostringstream diag;
  EXPECT_EQ(cmd_simulate(dir / "bad.scenario", dir / "out", std::nullopt, diag), kExitInputError);
  EXPECT_EQ(cmd_simulate(dir / "missing.scenario", dir / "out", std::nullopt, diag), kExitInputError);
}

TEST(Analyze, WithoutGazeRunsHeartRateOnly) {
  const auto session = simulate("hr-only");
  std::string cfg = slurp(session / "analyze.cfg");
  cfg.erase(cfg.find("gaze_log = gaze.csv\n"), 20);
  spit(session / "hr-only.cfg", cfg);
  const auto report = analyze(RunConfig::load(session / "hr-only.cfg"));
  EXPECT_EQ(report.session["entropy"]["status"], "absent");
  EXPECT_EQ(report.session["heart_rate"]["status"], "computed");
  for (const auto& e : report.events) EXPECT_EQ(e.source, EventSource::hr);
  EXPECT_FALSE(report.events.empty());
}

TEST(Analyze, CorruptHeaderNamesFileAndLine) {
  const auto session = simulate("corrupt");
  spit(session / "gaze.csv", "#schema gaze 1\nthis,is,not,a,header\n0,0,0\n");
  std::ostringstream diag;
  EXPECT_EQ(cmd_analyze(RunConfig::load(session / "analyze.cfg"), session / "out", diag),
            kExitInputError);
  EXPECT_NE(diag.str().find("gaze.csv:2"), std::string::npos) << diag.str();
}

TEST(Analyze, MissingInputExitsTwoNamingThePath) {
  const auto session = simulate("missing");
  fs::remove(session / "watch.csv");
  std::ostringstream diag;
  EXPECT_EQ(cmd_analyze(RunConfig::load(session / "analyze.cfg"), session / "out", diag),
            kExitInputError);
  EXPECT_NE(diag.str().find("watch.csv"), std::string::npos) << diag.str();
}

TEST(Analyze, TooManyBadRowsExitsThree) {
  const auto session = simulate("quality");
  std::string watch = slurp(session / "watch.csv");
  for (int i = 0; i < 100; ++i) watch += "HR,not-a-time,70\n";
  spit(session / "watch.csv", watch);
  std::ostringstream diag;
  EXPECT_EQ(cmd_analyze(RunConfig::load(session / "analyze.cfg"), session / "out", diag),
            kExitDataQuality);
  EXPECT_NE(diag.str().find("watch.csv"), std::string::npos) << diag.str();
}

TEST(Analyze, SameConfigSameBytes) {
  const auto session = simulate("determinism");
  const auto config = RunConfig::load(session / "analyze.cfg");
  std::ostringstream diag;
  ASSERT_EQ(cmd_analyze(config, session / "a", diag), kExitOk);
  ASSERT_EQ(cmd_analyze(config, session / "b", diag), kExitOk);
  for (const char* f : {"events.csv", "summary.csv", "report.json", "scatter.svg"}) {
    EXPECT_EQ(slurp(session / "a" / f), slurp(session / "b" / f)) << f;
  }
}

TEST(Config, UnknownKeysAndRanges) {
  EXPECT_THROW(RunConfig::from_config(KeyValueFile::parse("windw = 3\n"), "."), ConfigError);
  EXPECT_THROW(RunConfig::from_config(KeyValueFile::parse("watch_log = w.csv\nthreshold = 1.5\n"), "."),
               ConfigError);
  const auto c = RunConfig::from_config(KeyValueFile::parse("watch_log = w.csv\nentropy.window = 4\n"), ".");
  EXPECT_EQ(c.entropy.window_s, 4.0);
  EXPECT_FALSE(c.to_json().contains("output"));
}

TEST(Report, AggregateMergesSessions) {
  const auto session = simulate("aggregate");
  const auto config = RunConfig::load(session / "analyze.cfg");
  std::ostringstream diag;
  ASSERT_EQ(cmd_analyze(config, session / "r1", diag), kExitOk);
  ASSERT_EQ(cmd_analyze(config, session / "r2", diag), kExitOk);
  const std::vector<fs::path> reports{session / "r1" / "report.json", session / "r2" / "report.json"};
  const auto net = RoadNetwork::load((session / "road.road").string());
  const auto merged = aggregate_reports(reports, net, 20.0);
  const auto single = analyze(config);
  EXPECT_EQ(merged.events.size(), 2 * single.events.size());
  EXPECT_EQ(cmd_report(reports, session / "merged", session / "road.road", 20.0, diag), kExitOk);
}

TEST(Schema, MentionsEveryFamilyAndKey) {
  const auto text = schema_text();
  for (const char* s : {"pose", "gaze", "watch", "annotations", "orcl-road", "entropy.window",
                        "tolerance"}) {
    EXPECT_NE(text.find(s), std::string::npos) << s;
  }
}
