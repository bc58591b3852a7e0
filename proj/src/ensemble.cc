#include "quadobs/ensemble.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace quadobs {

EnsembleFamily parse_family(const std::string& name) {
  if (name == "pwconst") return EnsembleFamily::kPiecewiseConstant;
  if (name == "hermite") return EnsembleFamily::kHermiteCubic;
  if (name == "trig") return EnsembleFamily::kTrigonometric;
  if (name == "mixed") return EnsembleFamily::kMixed;
  throw std::invalid_argument("unknown ensemble family '" + name +
                              "' (expected pwconst, hermite, trig or mixed)");
}

std::string family_name(EnsembleFamily family) {
  switch (family) {
    case EnsembleFamily::kPiecewiseConstant: return "pwconst";
    case EnsembleFamily::kHermiteCubic: return "hermite";
    case EnsembleFamily::kTrigonometric: return "trig";
    case EnsembleFamily::kMixed: return "mixed";
  }
  return "?";
}

AmplitudeNorm parse_amplitude_norm(const std::string& name) {
  if (name == "sup") return AmplitudeNorm::kSup;
  if (name == "w1inf") return AmplitudeNorm::kW1Inf;
  if (name == "l2") return AmplitudeNorm::kL2;
  throw std::invalid_argument("unknown amplitude norm '" + name + "' (expected sup, w1inf or l2)");
}

std::string amplitude_norm_name(AmplitudeNorm norm) {
  switch (norm) {
    case AmplitudeNorm::kSup: return "sup";
    case AmplitudeNorm::kW1Inf: return "w1inf";
    case AmplitudeNorm::kL2: return "l2";
  }
  return "?";
}

double amplitude_of(const ControlSignal& u, AmplitudeNorm norm) {
  switch (norm) {
    case AmplitudeNorm::kSup: return sobolev_sup_norm(u, 0);
    case AmplitudeNorm::kW1Inf: return sobolev_sup_norm(u, 1);
    case AmplitudeNorm::kL2: return l2_norm(u);
  }
  return 0.0;
}

namespace {

ControlSignal piecewise_constant(const EnsembleSpec& spec, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> value(-1.0, 1.0);
  std::vector<LocalPolynomial> cells;
  for (int i = 0; i < spec.cells; ++i) cells.push_back({value(rng)});
  if (spec.vanishing_order >= 0) cells[0] = {0.0};
  return ControlSignal(PiecewisePolynomial(spec.horizon, std::move(cells)));
}

ControlSignal hermite_cubic(const EnsembleSpec& spec, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const double h = spec.horizon / spec.cells;
  std::vector<double> values(spec.cells + 1);
  std::vector<double> slopes(spec.cells + 1);
  for (int i = 0; i <= spec.cells; ++i) {
    values[i] = unit(rng);
    slopes[i] = unit(rng) / h;
  }
  const int m = spec.vanishing_order;
  if (m >= 0) values[0] = 0.0;
  if (m >= 1) slopes[0] = 0.0;
  std::vector<LocalPolynomial> cells;
  for (int i = 0; i < spec.cells; ++i) {
    const double v0 = values[i];
    const double v1 = values[i + 1];
    const double d0 = slopes[i];
    const double d1 = slopes[i + 1];
    if (i == 0 && m >= 2) {
      // c1 s^{m+1} + c2 s^{m+2} matching (v1, d1) at s = h.
      const double b = d1 * h - (m + 1) * v1;
      const double a = v1 - b;
      LocalPolynomial p(m + 3, 0.0);
      p[m + 1] = a / std::pow(h, m + 1);
      p[m + 2] = b / std::pow(h, m + 2);
      cells.push_back(std::move(p));
      continue;
    }
    const double slope = (v1 - v0) / h;
    cells.push_back({v0, d0, (3.0 * slope - 2.0 * d0 - d1) / h, (d0 + d1 - 2.0 * slope) / (h * h)});
  }
  return ControlSignal(PiecewisePolynomial(spec.horizon, std::move(cells)));
}

ControlSignal trigonometric(const EnsembleSpec& spec, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<TrigSeries::Term> terms;
  for (int j = 1; j <= spec.modes; ++j) {
    const double omega = std::numbers::pi * j / spec.horizon;
    terms.push_back({omega, gauss(rng) / j, gauss(rng) / j});
  }
  const ControlSignal raw(TrigSeries(spec.horizon, {0.0}, terms));
  if (spec.vanishing_order < 0) return raw;
  // Subtract the Taylor polynomial of order vanishing_order at 0.
  LocalPolynomial taylor(spec.vanishing_order + 1, 0.0);
  double factorial = 1.0;
  for (int i = 0; i <= spec.vanishing_order; ++i) {
    if (i > 0) factorial *= i;
    taylor[i] = -raw.derivative_value(0.0, i) / factorial;
  }
  return ControlSignal(TrigSeries(spec.horizon, std::move(taylor), std::move(terms)));
}

}  // namespace

ControlSignal random_control(const EnsembleSpec& spec, std::mt19937_64& rng, int index) {
  if (spec.count < 0 || spec.cells < 1 || spec.modes < 1 || !(spec.horizon > 0.0)) {
    throw std::invalid_argument("random_control: invalid ensemble spec");
  }
  EnsembleFamily family = spec.family;
  if (family == EnsembleFamily::kMixed) {
    family = index % 2 == 0 ? EnsembleFamily::kHermiteCubic : EnsembleFamily::kTrigonometric;
  }
  std::uniform_real_distribution<double> fraction(spec.min_fraction, 1.0);
  for (int attempt = 0; attempt < 16; ++attempt) {
    ControlSignal shape = family == EnsembleFamily::kPiecewiseConstant ? piecewise_constant(spec, rng)
                          : family == EnsembleFamily::kHermiteCubic    ? hermite_cubic(spec, rng)
                                                                       : trigonometric(spec, rng);
    const double size = amplitude_of(shape, spec.norm);
    const double target = spec.amplitude * fraction(rng);
    if (size > 0.0) return shape.scaled(target / size);
  }
  throw std::runtime_error("random_control: generator produced only zero controls");
}

std::vector<ControlSignal> generate_ensemble(const EnsembleSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  std::vector<ControlSignal> out;
  out.reserve(spec.count);
  for (int i = 0; i < spec.count; ++i) out.push_back(random_control(spec, rng, i));
  return out;
}

}  // namespace quadobs
