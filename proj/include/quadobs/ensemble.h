#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "quadobs/signal.h"

namespace quadobs {

enum class EnsembleFamily {
  kPiecewiseConstant,  // random value per cell
  kHermiteCubic,       // C^1 piecewise cubic through random values and slopes
  kTrigonometric,      // random low-frequency sine/cosine sum
  kMixed,              // alternates Hermite cubic and trigonometric
};

/// Norm the amplitude refers to.
enum class AmplitudeNorm { kSup, kW1Inf, kL2 };

struct EnsembleSpec {
  EnsembleFamily family = EnsembleFamily::kMixed;
  double horizon = 1.0;
  double amplitude = 0.05;
  AmplitudeNorm norm = AmplitudeNorm::kSup;
  int count = 100;
  std::uint64_t seed = 1;
  int cells = 8;
  int modes = 4;
  /// u^{(j)}(0) = 0 for j <= vanishing_order; -1 for no condition.
  int vanishing_order = -1;
  /// Each control has norm amplitude * U(min_fraction, 1).
  double min_fraction = 0.1;
};

EnsembleFamily parse_family(const std::string& name);
std::string family_name(EnsembleFamily family);
AmplitudeNorm parse_amplitude_norm(const std::string& name);
std::string amplitude_norm_name(AmplitudeNorm norm);

/// The norm of u selected by `norm`.
double amplitude_of(const ControlSignal& u, AmplitudeNorm norm);

/// One random control; advances `rng`. `index` selects the family for kMixed.
ControlSignal random_control(const EnsembleSpec& spec, std::mt19937_64& rng, int index = 0);

/// spec.count controls from a generator seeded with spec.seed.
std::vector<ControlSignal> generate_ensemble(const EnsembleSpec& spec);

}  // namespace quadobs
