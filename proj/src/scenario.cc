#include "quadobs/scenario.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "quadobs/errors.h"

namespace quadobs {

namespace {

using Schema = std::map<std::string, std::set<std::string>>;

const std::set<std::string> kTop = {"kind", "seed", "output", "description"};
const std::set<std::string> kSystem = {"dim", "f0", "f1", "depth"};
const std::set<std::string> kEnsemble = {"family", "count", "amplitude", "norm", "horizon",
                                         "cells", "modes", "vanishing_order", "min_fraction"};

const std::map<std::string, Schema>& schemas() {
  static const std::map<std::string, Schema> s = {
      {"analyze", {{"", kTop}, {"system", kSystem}, {"checks", {"bracket_fields", "linear_systems", "parity_kmax"}}}},
      {"steer",
       {{"", kTop},
        {"system", kSystem},
        {"steer", {"horizon", "x0", "method", "iterations", "tolerance", "grid", "sim_steps"}}}},
      {"drift",
       {{"", kTop},
        {"system", kSystem},
        {"ensemble", kEnsemble},
        {"drift", {"step", "sample_every", "tolerance", "graph"}}}},
      {"manifold",
       {{"", kTop}, {"system", kSystem}, {"ensemble", kEnsemble}, {"fit", {"amplitudes", "step", "sample_every"}}}},
      {"burgers-kernel",
       {{"", kTop},
        {"ensemble", kEnsemble},
        {"burgers",
         {"mode", "eps", "modes", "nodes", "pointwise_modes", "kernel", "delta", "samples", "ensembles",
          "min_cells"}}}},
      {"burgers-drift",
       {{"", kTop}, {"ensemble", kEnsemble}, {"burgers", {"eps", "modes", "dt", "initial_delta"}}}},
      {"schrodinger", {{"", kTop}, {"schrodinger", {"mu", "samples", "kmax", "cancel_k"}}}},
  };
  return s;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double to_number(const std::string& text, int line, const std::string& key) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) throw ParseError("key '" + key + "': expected a number, got '" + text + "'", line);
  return v;
}

}  // namespace

const std::vector<std::string>& scenario_kinds() {
  static const std::vector<std::string> kinds = [] {
    std::vector<std::string> k;
    for (const auto& [name, schema] : schemas()) k.push_back(name);
    return k;
  }();
  return kinds;
}

Scenario parse_scenario(std::string_view text, const std::string& origin) {
  Scenario s;
  s.origin = origin;
  s.sections[""];
  std::string current;
  std::map<std::string, int> section_lines;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string body = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (body.empty()) continue;
    if (body.front() == '[') {
      if (body.back() != ']') throw ParseError("unterminated section header", line);
      current = trim(std::string_view(body).substr(1, body.size() - 2));
      if (current.empty()) throw ParseError("empty section name", line);
      if (section_lines.count(current)) throw ParseError("duplicate section [" + current + "]", line);
      section_lines[current] = line;
      s.sections[current];
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", line, 1);
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (key.empty()) throw ParseError("missing key before '='", line, 1);
    if (value.empty()) throw ParseError("missing value for key '" + key + "'", line, static_cast<int>(eq) + 2);
    auto& section = s.sections[current];
    if (section.count(key)) throw ParseError("duplicate key '" + key + "'", line);
    section[key] = {value, line};
  }

  if (!s.has("", "kind")) throw ParseError("missing top-level key 'kind'", 1);
  const auto& kind_entry = s.entry("", "kind");
  const auto schema = schemas().find(kind_entry.value);
  if (schema == schemas().end()) {
    std::string known;
    for (const auto& k : scenario_kinds()) known += (known.empty() ? "" : ", ") + k;
    throw ParseError("unknown kind '" + kind_entry.value + "' (known: " + known + ")", kind_entry.line);
  }
  for (const auto& [name, entries] : s.sections) {
    const auto allowed = schema->second.find(name);
    if (allowed == schema->second.end()) {
      throw ParseError("section [" + name + "] is not used by kind " + kind_entry.value, section_lines[name]);
    }
    for (const auto& [key, e] : entries) {
      if (!allowed->second.count(key)) {
        throw ParseError("unknown key '" + key + "'" + (name.empty() ? "" : " in [" + name + "]"), e.line);
      }
    }
  }
  if (s.has("", "seed")) {
    const auto& e = s.entry("", "seed");
    uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(e.value.data(), e.value.data() + e.value.size(), v);
    if (ec != std::errc() || ptr != e.value.data() + e.value.size()) {
      throw ParseError("seed must be a non-negative integer", e.line);
    }
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read scenario file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str(), path.string());
}

uint64_t Scenario::seed() const {
  if (!has("", "seed")) return 1;
  const std::string& v = entry("", "seed").value;
  uint64_t out = 0;
  std::from_chars(v.data(), v.data() + v.size(), out);
  return out;
}

std::string Scenario::output() const {
  if (has("", "output")) return text("", "output");
  const std::string stem = std::filesystem::path(origin).stem().string();
  return stem.empty() || stem.front() == '<' ? "scenario" : stem;
}

bool Scenario::has(const std::string& section, const std::string& key) const {
  const auto it = sections.find(section);
  return it != sections.end() && it->second.count(key);
}

const Scenario::Entry& Scenario::entry(const std::string& section, const std::string& key) const {
  if (!has(section, key)) {
    throw ParseError("missing key '" + key + "'" + (section.empty() ? "" : " in [" + section + "]"));
  }
  return sections.at(section).at(key);
}

std::string Scenario::text(const std::string& section, const std::string& key) const {
  return entry(section, key).value;
}

std::string Scenario::text(const std::string& section, const std::string& key, const std::string& fallback) const {
  return has(section, key) ? text(section, key) : fallback;
}

double Scenario::number(const std::string& section, const std::string& key) const {
  const Entry& e = entry(section, key);
  return to_number(e.value, e.line, key);
}

double Scenario::number(const std::string& section, const std::string& key, double fallback) const {
  return has(section, key) ? number(section, key) : fallback;
}

int Scenario::integer(const std::string& section, const std::string& key, int fallback) const {
  if (!has(section, key)) return fallback;
  const Entry& e = entry(section, key);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(e.value.data(), e.value.data() + e.value.size(), v);
  if (ec != std::errc() || ptr != e.value.data() + e.value.size()) {
    throw ParseError("key '" + key + "': expected an integer, got '" + e.value + "'", e.line);
  }
  return v;
}

bool Scenario::flag(const std::string& section, const std::string& key, bool fallback) const {
  if (!has(section, key)) return fallback;
  const Entry& e = entry(section, key);
  if (e.value == "true" || e.value == "yes" || e.value == "1") return true;
  if (e.value == "false" || e.value == "no" || e.value == "0") return false;
  throw ParseError("key '" + key + "': expected true or false", e.line);
}

std::vector<double> Scenario::numbers(const std::string& section, const std::string& key) const {
  const Entry& e = entry(section, key);
  std::vector<double> out;
  std::string item;
  std::istringstream in(e.value);
  while (std::getline(in, item, ',')) {
    const std::string t = trim(item);
    if (t.empty()) throw ParseError("key '" + key + "': empty list item", e.line);
    out.push_back(to_number(t, e.line, key));
  }
  return out;
}

std::vector<double> Scenario::numbers(const std::string& section, const std::string& key,
                                      std::vector<double> fallback) const {
  return has(section, key) ? numbers(section, key) : fallback;
}

}  // namespace quadobs
