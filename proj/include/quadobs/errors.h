#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace quadobs {

/// Raised by text parsers. Carries a 1-based line and column when known.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line = 0, int column = 0)
      : std::runtime_error(Decorate(what, line, column)),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  static std::string Decorate(const std::string& what, int line, int column) {
    if (line <= 0) {
      return column > 0 ? "column " + std::to_string(column) + ": " + what
                        : what;
    }
    std::string prefix = "line " + std::to_string(line);
    if (column > 0) prefix += ", column " + std::to_string(column);
    return prefix + ": " + what;
  }

  int line_;
  int column_;
};

/// Two routes that must agree did not.
class NumericalIntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A state became non-finite during integration.
class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(const std::string& what, double time)
      : std::runtime_error(what + " (t = " + std::to_string(time) + ")"),
        time_(time) {}
  double time() const { return time_; }

 private:
  double time_;
};

/// Fixed-point iteration whose residual kept growing.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, std::vector<double> history)
      : std::runtime_error(what), history_(std::move(history)) {}
  const std::vector<double>& history() const { return history_; }

 private:
  std::vector<double> history_;
};

/// Regression or Gramian system without full rank.
class RankDeficiencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace quadobs
