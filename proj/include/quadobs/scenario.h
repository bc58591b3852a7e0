#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace quadobs {

/// Line-oriented scenario file:
///
///   # comment
///   kind = drift
///   seed = 7
///   [system]
///   dim = 3
///   f0 = 0; x1; x2^2 + x1^3
///
/// Top-level keys precede the first section. Keys are checked against a
/// per-kind schema; unknown sections or keys are ParseErrors with the line.
class Scenario {
 public:
  struct Entry {
    std::string value;
    int line = 0;
  };
  using Section = std::map<std::string, Entry>;

  std::string origin;
  std::map<std::string, Section> sections;  // "" holds the top-level keys

  std::string kind() const { return text("", "kind"); }
  uint64_t seed() const;
  /// Output subdirectory; defaults to the origin's file stem.
  std::string output() const;

  bool has(const std::string& section, const std::string& key) const;
  const Entry& entry(const std::string& section, const std::string& key) const;

  std::string text(const std::string& section, const std::string& key) const;
  std::string text(const std::string& section, const std::string& key, const std::string& fallback) const;
  double number(const std::string& section, const std::string& key) const;
  double number(const std::string& section, const std::string& key, double fallback) const;
  int integer(const std::string& section, const std::string& key, int fallback) const;
  bool flag(const std::string& section, const std::string& key, bool fallback) const;
  std::vector<double> numbers(const std::string& section, const std::string& key) const;
  std::vector<double> numbers(const std::string& section, const std::string& key,
                              std::vector<double> fallback) const;
};

/// Parses and validates against the schema of the declared kind.
Scenario parse_scenario(std::string_view text, const std::string& origin = "<string>");
Scenario load_scenario(const std::filesystem::path& path);

const std::vector<std::string>& scenario_kinds();

}  // namespace quadobs
