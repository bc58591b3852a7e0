#include "quadobs/burgers/spectrum.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace quadobs::burgers {

std::vector<double> exp_moments(double mu, int kmax) {
  if (mu < 0.0 || kmax < 0) throw std::invalid_argument("exp_moments: need mu >= 0, kmax >= 0");
  std::vector<double> j(kmax + 1, 0.0);
  if (mu > std::max(30.0, 2.0 * kmax)) {
    // Upward recursion J_k = (1 - k J_{k-1}) / mu, stable for mu > k.
    j[0] = -std::expm1(-mu) / mu;
    for (int k = 1; k <= kmax; ++k) j[k] = (1.0 - k * j[k - 1]) / mu;
    return j;
  }
  // Kummer form J_k = e^{-mu} sum_n mu^n / (n! (k + 1 + n)): positive terms.
  double term = 1.0;  // mu^n / n!
  for (int n = 0;; ++n) {
    if (n > 0) term *= mu / n;
    for (int k = 0; k <= kmax; ++k) j[k] += term / (k + 1 + n);
    if (n > mu && term < 1e-18 * j[0]) break;
    if (n > 400) break;
  }
  const double scale = std::exp(-mu);
  for (auto& v : j) v *= scale;
  return j;
}

namespace {

void trig_moments(int n, int pmax, std::vector<double>& s, std::vector<double>& c) {
  if (n < 1) throw std::invalid_argument("trig moments: frequency index must be >= 1");
  const double k = n * std::numbers::pi;
  const double cos_k = n % 2 == 0 ? 1.0 : -1.0;
  s.assign(pmax + 1, 0.0);
  c.assign(pmax + 1, 0.0);
  s[0] = (1.0 - cos_k) / k;
  c[0] = 0.0;
  for (int p = 1; p <= pmax; ++p) {
    s[p] = -cos_k / k + (p / k) * c[p - 1];
    c[p] = -(p / k) * s[p - 1];
  }
}

}  // namespace

std::vector<double> sine_moments(int n, int pmax) {
  std::vector<double> s, c;
  trig_moments(n, pmax, s, c);
  return s;
}

std::vector<double> cosine_moments(int n, int pmax) {
  std::vector<double> s, c;
  trig_moments(n, pmax, s, c);
  return c;
}

SineSpectrum SineSpectrum::ConstantOne(int modes) {
  std::vector<double> c(modes, 0.0);
  for (int m = 1; m <= modes; m += 2) c[m - 1] = 2.0 * std::numbers::sqrt2 / (m * std::numbers::pi);
  return SineSpectrum(std::move(c));
}

SineSpectrum SineSpectrum::Mode(int modes, int m, double amplitude) {
  if (m < 1 || m > modes) throw std::out_of_range("SineSpectrum::Mode: mode outside 1..M");
  SineSpectrum s = Zero(modes);
  s[m] = amplitude;
  return s;
}

SineSpectrum SineSpectrum::FromPolynomial(const std::vector<double>& coeffs, int modes) {
  const int pmax = std::max(0, static_cast<int>(coeffs.size()) - 1);
  SineSpectrum s = Zero(modes);
  for (int m = 1; m <= modes; ++m) {
    const auto moments = sine_moments(m, pmax);
    double v = 0.0;
    for (size_t p = 0; p < coeffs.size(); ++p) v += coeffs[p] * moments[p];
    s[m] = std::numbers::sqrt2 * v;
  }
  return s;
}

double SineSpectrum::evaluate(double x, Summation summation) const {
  const int n = modes();
  double v = 0.0;
  for (int m = 1; m <= n; ++m) {
    double c = c_[m - 1];
    if (c == 0.0) continue;
    if (summation == Summation::kLanczos) {
      const double arg = std::numbers::pi * m / (n + 1);
      c *= std::sin(arg) / arg;
    }
    v += c * std::sin(m * std::numbers::pi * x);
  }
  return std::numbers::sqrt2 * v;
}

double SineSpectrum::derivative(double x) const {
  double v = 0.0;
  for (int m = 1; m <= modes(); ++m) {
    if (c_[m - 1] == 0.0) continue;
    v += c_[m - 1] * m * std::numbers::pi * std::cos(m * std::numbers::pi * x);
  }
  return std::numbers::sqrt2 * v;
}

double SineSpectrum::inner(const SineSpectrum& other) const {
  const int n = std::min(modes(), other.modes());
  double v = 0.0;
  for (int i = 0; i < n; ++i) v += c_[i] * other.c_[i];
  return v;
}

double SineSpectrum::l2_norm() const { return std::sqrt(inner(*this)); }

double SineSpectrum::tail_ratio() const {
  if (c_.empty()) return 0.0;
  double largest = 0.0;
  for (double c : c_) largest = std::max(largest, std::abs(c));
  return largest > 0.0 ? std::abs(c_.back()) / largest : 0.0;
}

SineSpectrum SineSpectrum::operator+(const SineSpectrum& other) const {
  std::vector<double> c(std::max(modes(), other.modes()), 0.0);
  for (int i = 0; i < modes(); ++i) c[i] += c_[i];
  for (int i = 0; i < other.modes(); ++i) c[i] += other.c_[i];
  return SineSpectrum(std::move(c));
}

SineSpectrum SineSpectrum::operator-(const SineSpectrum& other) const { return *this + other * -1.0; }

SineSpectrum SineSpectrum::operator*(double s) const {
  std::vector<double> c = c_;
  for (auto& v : c) v *= s;
  return SineSpectrum(std::move(c));
}

SineSpectrum heat_propagate(const SineSpectrum& init, double viscosity, double t) {
  if (!(viscosity > 0.0) || t < 0.0) {
    throw std::invalid_argument("heat_propagate: need viscosity > 0 and t >= 0");
  }
  SineSpectrum out = init;
  for (int m = 1; m <= init.modes(); ++m) out[m] *= std::exp(-eigenvalue(m, viscosity) * t);
  return out;
}

}  // namespace quadobs::burgers
