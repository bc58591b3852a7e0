#pragma once

#include <memory>
#include <vector>

#include "quadobs/burgers/spectrum.h"

namespace quadobs::burgers {

/// Sine modes of -y y_x for y = sum_{j <= M} y_j sqrt(2) sin(j pi x):
///   S_m = (sqrt(2) m pi / 4) [sum_{|j-l| = m} y_j y_l - sum_{j+l = m} y_j y_l]
/// over ordered pairs. Computed exactly (no aliasing) through y^2 on the
/// 2M-point grid: a DST-I to the grid, squaring, a DCT-I back.
class QuadraticSource {
 public:
  explicit QuadraticSource(int modes);
  ~QuadraticSource();
  QuadraticSource(const QuadraticSource&) = delete;
  QuadraticSource& operator=(const QuadraticSource&) = delete;

  int modes() const { return modes_; }

  /// Modes 1..M of the source. When `tail` is given it receives
  /// |S_{M+1..2M-1}| / |S_{1..2M-1}| (0 for a zero source).
  SineSpectrum apply(const SineSpectrum& y, double* tail = nullptr) const;

  /// y at x_i = i / (2M), i = 0..2M.
  std::vector<double> grid_values(const SineSpectrum& y) const;

 private:
  struct Plans;
  int modes_;
  std::unique_ptr<Plans> plans_;
};

/// The same source by direct O(M^2) product-to-sum; modes 1..out_modes.
SineSpectrum quadratic_source_direct(const SineSpectrum& y, int out_modes);

}  // namespace quadobs::burgers
