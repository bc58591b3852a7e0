#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "quadobs/errors.h"
#include "quadobs/runner.h"
#include "quadobs/scenario.h"

namespace quadobs {
namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("quadobs_runner_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

TEST(Runner, ShippedScenariosValidate) {
  int count = 0;
  for (const auto& e : fs::directory_iterator(QUADOBS_SCENARIO_DIR)) {
    if (e.path().extension() != ".ini") continue;
    EXPECT_NO_THROW(load_scenario(e.path())) << e.path();
    ++count;
  }
  EXPECT_GE(count, 12);
}

TEST(Runner, AnalyzeWritesSummaryAndCsv) {
  const fs::path dir = scratch("analyze");
  const Scenario s = load_scenario(fs::path(QUADOBS_SCENARIO_DIR) / "analyze_sussmann.ini");
  const RunOutcome out = run_scenario(s, dir);
  EXPECT_EQ(out.status, 0);
  EXPECT_TRUE(fs::exists(dir / "summary.txt"));
  EXPECT_TRUE(fs::exists(dir / "s1_basis.csv"));
  EXPECT_NE(out.summary.find("k=2"), std::string::npos) << out.summary;
  EXPECT_EQ(slurp(dir / "summary.txt"), out.summary);
  EXPECT_EQ(slurp(dir / "s1_basis.csv").substr(0, 22), "index,component,value\n");
}

TEST(Runner, SteerReproducesDoubleIntegrator) {
  const fs::path dir = scratch("steer");
  const RunOutcome out = run_scenario(load_scenario(fs::path(QUADOBS_SCENARIO_DIR) / "c02_double_integrator_steer.ini"), dir);
  EXPECT_TRUE(fs::exists(dir / "control.csv"));
  EXPECT_NE(out.summary.find("residual"), std::string::npos);
}

TEST(Runner, SchrodingerCancellation) {
  const fs::path dir = scratch("schrodinger");
  const RunOutcome out = run_scenario(load_scenario(fs::path(QUADOBS_SCENARIO_DIR) / "c12_schrodinger_cancelled.ini"), dir);
  EXPECT_NE(out.summary.find("k=2: moment 0, alpha -0.161088128722, LOST+OBSTRUCTED"), std::string::npos) << out.summary;
  EXPECT_TRUE(fs::exists(dir / "moments.csv"));
}

TEST(Runner, InlineScenarioErrorsSurface) {
  const Scenario s = parse_scenario("kind = steer\n[system]\ndim = 2\nf0 = 0; x1\nf1 = 1; 0\n[steer]\nx0 = 1\n");
  try {
    run_scenario(s, scratch("bad"));
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 7);
  }
}

TEST(Runner, DriftWithoutBadIndexIsRejected) {
  const Scenario s = parse_scenario("kind = drift\n[system]\ndim = 2\nf0 = 0; x1\nf1 = 1; 0\n[ensemble]\ncount = 2\n");
  EXPECT_THROW(run_scenario(s, scratch("nodrift")), std::domain_error);
}

TEST(Runner, OutputRootHonoursEnvironment) {
  ::setenv("QUADOBS_OUTPUT_ROOT", "/tmp/elsewhere", 1);
  EXPECT_EQ(output_root(), fs::path("/tmp/elsewhere"));
  ::unsetenv("QUADOBS_OUTPUT_ROOT");
  EXPECT_EQ(output_root(), fs::path("quadobs_out"));
}

}  // namespace
}  // namespace quadobs
