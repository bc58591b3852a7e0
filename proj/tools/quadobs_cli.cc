// Batch front end: run, validate or list scenario files.

#include <algorithm>
#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "quadobs/errors.h"
#include "quadobs/runner.h"
#include "quadobs/scenario.h"

namespace {

std::filesystem::path examples_dir() {
#ifdef QUADOBS_SCENARIO_DIR
  return QUADOBS_SCENARIO_DIR;
#else
  return "scenarios";
#endif
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quadobs: quadratic obstructions to small-time local controllability"};
  app.require_subcommand(1);

  std::string run_path;
  std::string out_root;
  auto* run = app.add_subcommand("run", "Run a scenario and write summary.txt plus CSV files");
  run->add_option("scenario", run_path, "Scenario file")->required();
  run->add_option("--output-root", out_root, "Output root (default $QUADOBS_OUTPUT_ROOT or quadobs_out)");

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Parse and schema-check a scenario without running it");
  validate->add_option("scenario", validate_path, "Scenario file")->required();

  auto* list = app.add_subcommand("list-examples", "List the shipped scenario files");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      const quadobs::Scenario s = quadobs::load_scenario(run_path);
      const std::filesystem::path root = out_root.empty() ? quadobs::output_root() : std::filesystem::path(out_root);
      const auto outcome = quadobs::run_scenario(s, root / s.output());
      std::cout << outcome.summary;
      std::cout << "\nwrote:\n";
      for (const auto& f : outcome.files) std::cout << "  " << f.string() << "\n";
      return outcome.status;
    }
    if (*validate) {
      const quadobs::Scenario s = quadobs::load_scenario(validate_path);
      std::cout << validate_path << ": ok (kind " << s.kind() << ", seed " << s.seed() << ")\n";
      return 0;
    }
    if (*list) {
      std::vector<std::filesystem::path> files;
      for (const auto& e : std::filesystem::directory_iterator(examples_dir())) {
        if (e.path().extension() == ".ini") files.push_back(e.path());
      }
      std::sort(files.begin(), files.end());
      for (const auto& f : files) {
        const quadobs::Scenario s = quadobs::load_scenario(f);
        std::cout << f.filename().string() << "  [" << s.kind() << "]  " << s.text("", "description", "") << "\n";
      }
      return 0;
    }
  } catch (const quadobs::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const quadobs::NumericalIntegrityError& e) {
    std::cerr << "integrity check failed: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
