#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "quadobs/scenario.h"

namespace quadobs {

/// CSV file with a fixed header; doubles written with 17 significant digits.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);

  template <typename... Fields>
  void row(const Fields&... fields) {
    int i = 0;
    ((out_ << (i++ ? "," : "") << fields), ...);
    out_ << '\n';
  }

 private:
  std::ofstream out_;
};

struct RunOutcome {
  int status = 0;
  std::string summary;
  std::vector<std::filesystem::path> files;
};

/// Runs the scenario's pipeline, writing summary.txt and CSV files into
/// `out_dir`. Integrity failures and solver errors propagate as exceptions.
RunOutcome run_scenario(const Scenario& scenario, const std::filesystem::path& out_dir);

/// $QUADOBS_OUTPUT_ROOT, or "quadobs_out" when unset.
std::filesystem::path output_root();

}  // namespace quadobs
