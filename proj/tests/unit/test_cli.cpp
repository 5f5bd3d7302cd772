#include <filesystem>
#include <algorithm>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "app.hpp"
#include "report.hpp"
#include "scenario.hpp"

namespace shockline::cli {
namespace {

namespace fs = std::filesystem;

nlohmann::json demo() {
  return nlohmann::json::parse(R"({
    "gas": {"gamma": 2.0, "big_k": 1.0},
    "damping": {"alpha": 1.0, "lambda": 0.0},
    "profile": {"preset": "gaussian", "u_amp": -3.0, "center": 4.0, "width": 0.3},
    "grid": {"n": 128, "length": 8.0},
    "run": {"t_end": 1.0}
  })");
}

class TempDir {
 public:
  explicit TempDir(const std::string& name)
      : path_(fs::temp_directory_path() / ("shockline_cli_" + name)) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }
  fs::path write(const std::string& file, const nlohmann::json& j) const {
    std::ofstream(path_ / file) << j.dump(2);
    return path_ / file;
  }

 private:
  fs::path path_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(Scenario, ParsesDefaults) {
  const Scenario s = parse_scenario(demo());
  EXPECT_EQ(s.gamma, 2.0);
  EXPECT_EQ(s.profile.preset, Preset::kGaussian);
  EXPECT_EQ(s.profile.tau0, 1.0);
  EXPECT_EQ(s.n, 128u);
  EXPECT_EQ(s.cfl, 0.4);
  EXPECT_FALSE(s.c0);
}

TEST(Scenario, RejectsInvalidInput) {
  auto bad = demo();
  bad["gas"]["gamma"] = 3.0;
  EXPECT_THROW(parse_scenario(bad), ConfigError);
  bad = demo();
  bad["grid"]["n"] = 4;
  EXPECT_THROW(parse_scenario(bad), ConfigError);
  bad = demo();
  bad["run"]["cfl"] = 0.9;
  EXPECT_THROW(parse_scenario(bad), ConfigError);
  bad = demo();
  bad["profile"]["colour"] = "red";
  EXPECT_THROW(parse_scenario(bad), ConfigError);
  bad = demo();
  bad.erase("damping");
  EXPECT_THROW(parse_scenario(bad), ConfigError);
  bad = demo();
  bad["profile"]["tau_amp"] = -2.0;
  EXPECT_THROW(parse_scenario(bad), ConfigError);
  bad = demo();
  bad["gas"]["gamma"] = 5.0;
  bad["run"]["c0"] = 1.0;  // below max|u| = 3
  EXPECT_THROW(parse_scenario(bad), ConfigError);
}

TEST(App, ExitCodes) {
  TempDir dir("exit");
  std::ostringstream log, err;
  auto bad = demo();
  bad["gas"]["gamma"] = 3.0;
  AppOptions o{Verb::kCheck, dir.write("bad.json", bad), dir.path() / "out"};
  EXPECT_EQ(run_app(o, log, err), kExitValidation);
  const auto j = nlohmann::json::parse(err.str());
  EXPECT_EQ(j["error"], "validation");
  EXPECT_FALSE(fs::exists(dir.path() / "out" / "verdict.json"));

  err.str("");
  o.config = dir.write("good.json", demo());
  EXPECT_EQ(run_app(o, log, err), kExitOk);
  EXPECT_TRUE(err.str().empty());
  EXPECT_TRUE(fs::exists(dir.path() / "out" / "verdict.json"));
  EXPECT_TRUE(fs::exists(dir.path() / "out" / "summary.txt"));
  EXPECT_FALSE(fs::exists(dir.path() / "out" / "monitors.csv"));

  o.verb = Verb::kValidate;
  EXPECT_EQ(run_app(o, log, err), kExitOk);
  o.config = dir.path() / "missing.json";
  EXPECT_EQ(run_app(o, log, err), kExitValidation);
}

TEST(App, SimulateWritesEveryOutput) {
  TempDir dir("simulate");
  std::ostringstream log, err;
  auto cfg = demo();
  cfg["outputs"] = {{"snapshots", true}};
  const AppOptions o{Verb::kSimulate, dir.write("s.json", cfg), dir.path()};
  ASSERT_EQ(run_app(o, log, err), kExitOk) << err.str();
  for (const char* f : {"verdict.json", "monitors.csv", "trace.csv", "summary.txt", "snapshots.bin"}) {
    EXPECT_TRUE(fs::exists(dir.path() / f)) << f;
  }
  const std::string trace = slurp(dir.path() / "trace.csv");
  EXPECT_EQ(trace.substr(0, trace.find('\n')), "t,x,phi,y_or_q,riccati_y,deviation");
  const std::string mon = slurp(dir.path() / "monitors.csv");
  EXPECT_EQ(mon.substr(0, mon.find('\n')), "t,max_abs_ux,min_rho,y_max,q_max,flags");
  const Verdict v = parse_verdict_json(slurp(dir.path() / "verdict.json"));
  EXPECT_EQ(v.theorem, Theorem::kT32);
  EXPECT_TRUE(v.fired);
}

TEST(Report, VerdictJsonRoundTrip) {
  const Verdict v{Theorem::kT41, true, Characteristic::kBackward, 0.1 + 0.2, -1.0 / 3.0,
                  -2.2998316455372218, 2.5627426836344796};
  const std::string text = verdict_json(v);
  EXPECT_EQ(parse_verdict_json(text), v);
  const auto j = nlohmann::json::parse(text);
  for (const char* key : {"theorem", "fired", "characteristic", "witness_x", "lhs", "rhs", "threshold"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["theorem"], "T4_1");
  EXPECT_EQ(parse_verdict_json(verdict_json(Verdict{})), Verdict{});
}

TEST(Report, SummaryFloorLineOnlyBelowThree) {
  for (double gamma : {2.0, 5.0}) {
    auto cfg = demo();
    cfg["gas"]["gamma"] = gamma;
    cfg["profile"]["u_amp"] = -0.5;
    const ScenarioReport r = evaluate_scenario(parse_scenario(cfg), true);
    std::ostringstream out;
    write_summary(out, r);
    EXPECT_EQ(out.str().find("density floor") != std::string::npos, gamma < 3.0) << out.str();
  }
}

nlohmann::json lambda_sweep() {
  auto base = demo();
  base["gas"]["gamma"] = 5.0;
  base["profile"]["u_amp"] = -0.5;
  return {{"template", base},
          {"axes", {{{"name", "lambda"}, {"min", 0.0}, {"max", 3.0}, {"count", 7}}}},
          {"simulate", false}};
}

TEST(Sweep, LambdaAxisCrossesRegimes) {
  const SweepSpec sw = parse_sweep(lambda_sweep());
  ASSERT_EQ(sw.cells(), 7u);
  const auto rows = run_sweep_cells(sw, 2);
  const char* expected[] = {"T3_1", "T3_1", "T4_1", "NONE", "NONE", "T3_1", "T3_1"};
  const char* regimes[] = {"GENERIC_LOW", "GENERIC_LOW", "CRITICAL", "GENERIC_GAP",
                           "GENERIC_GAP", "GENERIC_HIGH", "GENERIC_HIGH"};
  for (std::size_t i = 0; i < 7; ++i) {
    EXPECT_EQ(rows[i].status, "ok");
    EXPECT_EQ(rows[i].theorem, expected[i]) << i;
    EXPECT_EQ(rows[i].regime, regimes[i]) << i;
    EXPECT_DOUBLE_EQ(rows[i].coords[0], 0.5 * static_cast<double>(i));
  }
}

TEST(Sweep, SingleCellMatchesScenario) {
  auto j = lambda_sweep();
  j["axes"][0]["min"] = 0.25;
  j["axes"][0]["max"] = 0.25;
  j["axes"][0]["count"] = 1;
  j["simulate"] = true;
  const SweepSpec sw = parse_sweep(j);
  const auto rows = run_sweep_cells(sw, 1);
  ASSERT_EQ(rows.size(), 1u);
  auto cfg = j["template"];
  cfg["damping"]["lambda"] = 0.25;
  const ScenarioReport r = evaluate_scenario(parse_scenario(cfg), true);
  EXPECT_EQ(rows[0].theorem, std::string(to_string(r.verdict.theorem)));
  EXPECT_EQ(rows[0].fired, r.verdict.fired);
  EXPECT_EQ(rows[0].breakdown, r.run->breakdown.has_value());
}

TEST(Sweep, FailingCellsStayIsolated) {
  auto j = lambda_sweep();
  j["template"]["gas"]["gamma"] = 2.0;
  j["axes"] = {{{"name", "gamma"}, {"min", 2.0}, {"max", 4.0}, {"count", 3}}};
  const auto rows = run_sweep_cells(parse_sweep(j), 3);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].status, "ok");
  EXPECT_EQ(rows[1].status, "invalid");  // gamma = 3
  EXPECT_FALSE(rows[1].message.empty());
  EXPECT_EQ(rows[2].status, "ok");
}

TEST(Sweep, OutputIsDeterministicAcrossJobCounts) {
  auto j = lambda_sweep();
  j["axes"].push_back({{"name", "steepness"}, {"min", 0.5}, {"max", 3.0}, {"count", 3}});
  const SweepSpec sw = parse_sweep(j);
  std::ostringstream a, b;
  write_sweep_csv(a, sw, run_sweep_cells(sw, 1));
  write_sweep_csv(b, sw, run_sweep_cells(sw, 4));
  const std::string text = a.str();
  EXPECT_EQ(text, b.str());
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 22);
}

TEST(Sweep, BudgetIsEnforced) {
  auto j = lambda_sweep();
  j["axes"][0]["count"] = 100;
  j["budget"] = 50;
  EXPECT_THROW(parse_sweep(j), ConfigError);
}

TEST(Steepness, GaussianPeak) {
  ProfileSpec p;
  p.preset = Preset::kGaussian;
  p.u_amp = -2.0;
  p.width = 0.5;
  EXPECT_NEAR(steepness(p, 8.0), 2.0 / (0.5 * std::sqrt(std::exp(1.0))), 1e-12);
  set_steepness(p, 8.0, 1.0);
  EXPECT_LT(p.u_amp, 0.0);
  EXPECT_NEAR(steepness(p, 8.0), 1.0, 1e-12);
}

}  // namespace
}  // namespace shockline::cli
