#include "quadobs/schrodinger.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "quadobs/burgers/spectrum.h"
#include "quadobs/signal.h"

namespace quadobs {

struct DipoleMoment::Spline {
  boost::math::interpolators::cardinal_cubic_b_spline<double> s;
};

DipoleMoment DipoleMoment::Polynomial(std::vector<double> coeffs) {
  if (coeffs.empty()) coeffs.push_back(0.0);
  DipoleMoment mu;
  mu.coeffs_ = std::move(coeffs);
  return mu;
}

DipoleMoment DipoleMoment::Sampled(std::vector<double> values) {
  if (values.size() < 4) throw std::invalid_argument("DipoleMoment: need at least 4 samples");
  DipoleMoment mu;
  const double h = 1.0 / (values.size() - 1);
  mu.spline_ = std::make_shared<const Spline>(
      Spline{boost::math::interpolators::cardinal_cubic_b_spline<double>(values.begin(), values.end(), 0.0, h)});
  return mu;
}

double DipoleMoment::operator()(double x) const { return spline_ ? spline_->s(x) : horner(coeffs_, x); }

double DipoleMoment::derivative(double x) const {
  return spline_ ? spline_->s.prime(x) : horner(poly_derivative(coeffs_), x);
}

namespace {

double integrate(const std::function<double(double)>& f) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, 1.0, 15, 1e-13);
}

/// int_0^1 x^p cos(n pi x) dx for p = 0..pmax, n >= 0.
std::vector<double> cos_moments(int n, int pmax) {
  if (n == 0) {
    std::vector<double> out(pmax + 1);
    for (int p = 0; p <= pmax; ++p) out[p] = 1.0 / (p + 1);
    return out;
  }
  return burgers::cosine_moments(n, pmax);
}

/// int_0^1 p(x) 2 sin(pi x) sin(k pi x) = int p (cos((k-1) pi x) - cos((k+1) pi x)).
double polynomial_against_modes(const LocalPolynomial& p, int k) {
  const int pmax = static_cast<int>(p.size()) - 1;
  const auto lo = cos_moments(k - 1, pmax);
  const auto hi = cos_moments(k + 1, pmax);
  double v = 0.0;
  for (int i = 0; i <= pmax; ++i) v += p[i] * (lo[i] - hi[i]);
  return v;
}

double quadrature_against_modes(const std::function<double(double)>& f, int k) {
  return integrate([&](double x) {
    return f(x) * 2.0 * std::sin(std::numbers::pi * x) * std::sin(k * std::numbers::pi * x);
  });
}

void require_k(int k) {
  if (k < 1) throw std::invalid_argument("moment index k must be >= 1");
}

bool closed_form(const DipoleMoment& mu, Integration how) {
  if (how == Integration::kClosedForm && !mu.is_polynomial()) {
    throw std::invalid_argument("closed form needs a polynomial dipole moment");
  }
  return how == Integration::kClosedForm || (how == Integration::kAuto && mu.is_polynomial());
}

}  // namespace

double DipoleMoment::l2_norm() const {
  if (!spline_) {
    const LocalPolynomial sq = poly_multiply(coeffs_, coeffs_);
    double v = 0.0;
    for (size_t p = 0; p < sq.size(); ++p) v += sq[p] / (p + 1);
    return std::sqrt(v);
  }
  return std::sqrt(integrate([this](double x) { return std::pow((*this)(x), 2); }));
}

std::string DipoleMoment::describe() const {
  std::ostringstream out;
  if (spline_) return "sampled profile";
  out << "poly[";
  for (size_t i = 0; i < coeffs_.size(); ++i) out << (i ? "," : "") << coeffs_[i];
  out << "]";
  return out.str();
}

double moment_coeff(const DipoleMoment& mu, int k, Integration how) {
  require_k(k);
  if (closed_form(mu, how)) return polynomial_against_modes(mu.coefficients(), k);
  return quadrature_against_modes([&mu](double x) { return mu(x); }, k);
}

double alpha_coeff(const DipoleMoment& mu, int k, Integration how) {
  require_k(k);
  if (closed_form(mu, how)) {
    const LocalPolynomial d = poly_derivative(mu.coefficients());
    return polynomial_against_modes(poly_multiply(d, d), k);
  }
  return quadrature_against_modes([&mu](double x) { return std::pow(mu.derivative(x), 2); }, k);
}

std::string direction_class_name(DirectionClass c) {
  switch (c) {
    case DirectionClass::kRich:
      return "RICH";
    case DirectionClass::kLostObstructed:
      return "LOST+OBSTRUCTED";
    case DirectionClass::kLostInconclusive:
      return "LOST+INCONCLUSIVE";
  }
  return "?";
}

void MomentReport::write_csv(std::ostream& out) const {
  out << "k,moment,alpha,class\n";
  out.precision(17);
  for (size_t i = 0; i < k.size(); ++i) {
    out << k[i] << ',' << moments[i] << ',' << alphas[i] << ',' << direction_class_name(classes[i]) << '\n';
  }
}

MomentReport classify(const DipoleMoment& mu, int kmax) {
  if (kmax < 2) throw std::invalid_argument("classify: kmax must be >= 2");
  MomentReport report;
  report.zero_tolerance = 1e-9 * mu.l2_norm();
  double slope_norm = 0.0;  // ||(mu')^2||
  if (mu.is_polynomial()) {
    const LocalPolynomial d = poly_derivative(mu.coefficients());
    const LocalPolynomial sq = poly_multiply(d, d);
    const LocalPolynomial four = poly_multiply(sq, sq);
    for (size_t p = 0; p < four.size(); ++p) slope_norm += four[p] / (p + 1);
    slope_norm = std::sqrt(slope_norm);
  } else {
    slope_norm = std::sqrt(integrate([&mu](double x) { return std::pow(mu.derivative(x), 4); }));
  }
  const double alpha_tolerance = 1e-9 * slope_norm;
  bool any_rich = false;
  report.richness_margin = 0.0;
  for (int k = 1; k <= kmax; ++k) {
    const double m = moment_coeff(mu, k);
    const double a = alpha_coeff(mu, k);
    DirectionClass c = DirectionClass::kRich;
    if (m == 0.0 || std::abs(m) < report.zero_tolerance) {
      c = a != 0.0 && std::abs(a) >= alpha_tolerance ? DirectionClass::kLostObstructed
                                                     : DirectionClass::kLostInconclusive;
    } else {
      const double margin = std::pow(k, 3) * std::abs(m);
      report.richness_margin = any_rich ? std::min(report.richness_margin, margin) : margin;
      any_rich = true;
    }
    report.k.push_back(k);
    report.moments.push_back(m);
    report.alphas.push_back(a);
    report.classes.push_back(c);
  }
  return report;
}

}  // namespace quadobs
