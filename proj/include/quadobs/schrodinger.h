#pragma once

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

namespace quadobs {

/// Dipole moment mu on [0, 1]: a polynomial (exact calculus) or uniform
/// samples interpolated by a cubic B-spline.
class DipoleMoment {
 public:
  static DipoleMoment Polynomial(std::vector<double> coeffs);
  /// values[i] = mu(i / (n - 1)), n >= 4.
  static DipoleMoment Sampled(std::vector<double> values);

  bool is_polynomial() const { return !spline_; }
  /// Monomial coefficients; empty for sampled profiles.
  const std::vector<double>& coefficients() const { return coeffs_; }

  double operator()(double x) const;
  double derivative(double x) const;
  /// (int_0^1 mu^2)^{1/2}.
  double l2_norm() const;
  std::string describe() const;

 private:
  struct Spline;
  DipoleMoment() = default;
  std::vector<double> coeffs_;
  std::shared_ptr<const Spline> spline_;
};

enum class Integration { kAuto, kClosedForm, kQuadrature };

/// <mu phi_1, phi_k> = int_0^1 mu 2 sin(pi x) sin(k pi x) dx, phi_k = sqrt(2) sin(k pi x).
/// kAuto is closed form for polynomials and adaptive Gauss-Kronrod otherwise.
double moment_coeff(const DipoleMoment& mu, int k, Integration how = Integration::kAuto);
/// alpha_k = <(mu')^2 phi_1, phi_k>.
double alpha_coeff(const DipoleMoment& mu, int k, Integration how = Integration::kAuto);

enum class DirectionClass { kRich, kLostObstructed, kLostInconclusive };
std::string direction_class_name(DirectionClass c);

struct MomentReport {
  std::vector<int> k;
  std::vector<double> moments;
  std::vector<double> alphas;
  std::vector<DirectionClass> classes;
  /// min k^3 |<mu phi_1, phi_k>| over the rich k (0 if none).
  double richness_margin = 0.0;
  double zero_tolerance = 0.0;

  void write_csv(std::ostream& out) const;
};

/// A direction k is lost when |moment| < 1e-9 ||mu||; it is obstructed when
/// in addition |alpha_k| >= 1e-9 ||(mu')^2||.
MomentReport classify(const DipoleMoment& mu, int kmax);

}  // namespace quadobs
