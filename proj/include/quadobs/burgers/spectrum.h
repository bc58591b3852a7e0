#pragma once

#include <vector>

#include "quadobs/signal.h"

namespace quadobs::burgers {

/// int_0^1 exp(-mu (1 - v)) v^k dv for k = 0..kmax, mu >= 0.
std::vector<double> exp_moments(double mu, int kmax);

/// int_0^1 x^p sin(k x) dx and int_0^1 x^p cos(k x) dx for p = 0..pmax,
/// with k = n pi, n >= 1.
std::vector<double> sine_moments(int n, int pmax);
std::vector<double> cosine_moments(int n, int pmax);

/// Coefficients c_m of sum_m c_m sqrt(2) sin(m pi x), m = 1..M.
class SineSpectrum {
 public:
  enum class Summation { kPlain, kLanczos };

  SineSpectrum() = default;
  explicit SineSpectrum(std::vector<double> coeffs) : c_(std::move(coeffs)) {}

  static SineSpectrum Zero(int modes) { return SineSpectrum(std::vector<double>(modes, 0.0)); }
  /// Expansion of the constant 1: 2 sqrt(2) / (m pi) for odd m.
  static SineSpectrum ConstantOne(int modes);
  static SineSpectrum Mode(int modes, int m, double amplitude = 1.0);
  /// Exact projection of sum_p a_p x^p.
  static SineSpectrum FromPolynomial(const std::vector<double>& coeffs, int modes);

  int modes() const { return static_cast<int>(c_.size()); }
  /// Coefficient of mode m (1-based).
  double operator[](int m) const { return c_[m - 1]; }
  double& operator[](int m) { return c_[m - 1]; }
  const std::vector<double>& coeffs() const { return c_; }

  double evaluate(double x, Summation summation = Summation::kPlain) const;
  double derivative(double x) const;

  /// int_0^1 f g, exact (orthonormal basis).
  double inner(const SineSpectrum& other) const;
  double l2_norm() const;
  /// |c_M| / max_m |c_m|.
  double tail_ratio() const;

  SineSpectrum operator+(const SineSpectrum& other) const;
  SineSpectrum operator-(const SineSpectrum& other) const;
  SineSpectrum operator*(double s) const;

 private:
  std::vector<double> c_;
};

/// lambda_m = viscosity m^2 pi^2.
inline double eigenvalue(int m, double viscosity) {
  constexpr double kPi2 = 9.869604401089358;
  return viscosity * kPi2 * static_cast<double>(m) * m;
}

/// Mode m multiplied by exp(-viscosity m^2 pi^2 t).
SineSpectrum heat_propagate(const SineSpectrum& init, double viscosity, double t);

struct SpectralPath {
  std::vector<double> times;
  std::vector<SineSpectrum> states;

  const SineSpectrum& final_state() const { return states.back(); }
};

}  // namespace quadobs::burgers
