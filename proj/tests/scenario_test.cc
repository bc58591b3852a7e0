#include <gtest/gtest.h>

#include "quadobs/errors.h"
#include "quadobs/scenario.h"

namespace quadobs {
namespace {

int error_line(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

TEST(Scenario, ParsesSectionsAndTypedValues) {
  const Scenario s = parse_scenario(
      "# header\n"
      "kind = drift\n"
      "seed = 7\n"
      "[system]\n"
      "dim = 3   # trailing comment\n"
      "f0 = 0; x1; x2^2\n"
      "[ensemble]\n"
      "amplitude = 0.05\n"
      "[drift]\n"
      "step = 1e-3\n",
      "demo.ini");
  EXPECT_EQ(s.kind(), "drift");
  EXPECT_EQ(s.seed(), 7u);
  EXPECT_EQ(s.output(), "demo");
  EXPECT_EQ(s.integer("system", "dim", 0), 3);
  EXPECT_EQ(s.text("system", "f0"), "0; x1; x2^2");
  EXPECT_DOUBLE_EQ(s.number("ensemble", "amplitude"), 0.05);
  EXPECT_DOUBLE_EQ(s.number("drift", "tolerance", 1e-10), 1e-10);
  EXPECT_EQ(s.entry("drift", "step").line, 10);
}

TEST(Scenario, ListsAndFlags) {
  const Scenario s = parse_scenario("kind = manifold\n[fit]\namplitudes = 0.1, 0.05 ,0.025\n");
  EXPECT_EQ(s.numbers("fit", "amplitudes"), (std::vector<double>{0.1, 0.05, 0.025}));
  EXPECT_EQ(s.seed(), 1u);
}

TEST(Scenario, ErrorsCarryLineNumbers) {
  EXPECT_EQ(error_line("kind = drift\n[system]\ndim = 2\nbogus = 1\n"), 4);
  EXPECT_EQ(error_line("kind = drift\n[nowhere]\n"), 2);
  EXPECT_EQ(error_line("kind = drift\n[system]\ndim = 2\ndim = 3\n"), 4);
  EXPECT_EQ(error_line("seed = 1\nkind = teleport\n"), 2);
  EXPECT_EQ(error_line("kind = drift\nseed = -4\n"), 2);
  EXPECT_EQ(error_line("kind = drift\n[system\n"), 2);
  EXPECT_EQ(error_line("kind = drift\njust words\n"), 2);
  EXPECT_EQ(error_line("kind = drift\n[system]\ndim =\n"), 3);
  EXPECT_EQ(error_line("seed = 3\n"), 1);
}

TEST(Scenario, BadNumbersReportTheirLine) {
  const Scenario s = parse_scenario("kind = drift\n[drift]\nstep = fast\n");
  try {
    s.number("drift", "step");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
  }
  EXPECT_THROW(s.integer("drift", "step", 0), ParseError);
}

TEST(Scenario, SectionsAreCheckedPerKind) {
  EXPECT_THROW(parse_scenario("kind = schrodinger\n[system]\ndim = 1\n"), ParseError);
  EXPECT_NO_THROW(parse_scenario("kind = schrodinger\n[schrodinger]\nmu = 0, 1\n"));
}

TEST(Scenario, KnownKinds) {
  const auto& kinds = scenario_kinds();
  for (const char* k : {"analyze", "steer", "drift", "manifold", "burgers-kernel", "burgers-drift", "schrodinger"}) {
    EXPECT_NE(std::find(kinds.begin(), kinds.end(), k), kinds.end()) << k;
  }
}

}  // namespace
}  // namespace quadobs
