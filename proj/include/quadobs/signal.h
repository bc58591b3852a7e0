#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace quadobs {

/// Coefficients c_0 + c_1 s + ... in a local variable s.
using LocalPolynomial = std::vector<double>;

double horner(const LocalPolynomial& p, double s);
LocalPolynomial poly_derivative(const LocalPolynomial& p);
LocalPolynomial poly_antiderivative(const LocalPolynomial& p);  // zero at s = 0
LocalPolynomial poly_multiply(const LocalPolynomial& a, const LocalPolynomial& b);
/// Coefficients of p(s + shift) in s.
LocalPolynomial poly_shift(const LocalPolynomial& p, double shift);
/// Max |p(s)| over [0, h], from endpoints and critical points.
double poly_sup_abs(const LocalPolynomial& p, double h);
/// Real roots of p strictly inside (0, h), sorted.
std::vector<double> poly_roots_in(const LocalPolynomial& p, double h);

/// Piecewise polynomial on a uniform partition of [0, T]; cell i holds a
/// polynomial in s = t - i h.
class PiecewisePolynomial {
 public:
  PiecewisePolynomial(double horizon, std::vector<LocalPolynomial> cells);

  double horizon() const { return horizon_; }
  int num_cells() const { return static_cast<int>(cells_.size()); }
  double cell_width() const { return horizon_ / num_cells(); }
  double cell_start(int i) const { return i * cell_width(); }
  const LocalPolynomial& cell(int i) const { return cells_[i]; }
  int degree() const;

  /// Cell containing t; the right end belongs to the last cell.
  int locate(double t) const;
  double evaluate(double t) const;

  PiecewisePolynomial derivative() const;
  /// Antiderivative vanishing at 0, continuous across knots.
  PiecewisePolynomial primitive() const;
  PiecewisePolynomial scaled(double c) const;
  /// Same number of cells, each cell split into `factor` equal cells.
  PiecewisePolynomial refined(int factor) const;

  /// Largest jump of the `order`-th derivative across interior knots.
  double max_jump(int order) const;

 private:
  double horizon_;
  std::vector<LocalPolynomial> cells_;
};

/// u(t) = P(t) + sum_j (a_j sin(w_j t) + b_j cos(w_j t)) on [0, T].
class TrigSeries {
 public:
  struct Term {
    double omega;
    double sin_coeff;
    double cos_coeff;
  };

  TrigSeries(double horizon, LocalPolynomial polynomial, std::vector<Term> terms);

  double horizon() const { return horizon_; }
  const LocalPolynomial& polynomial() const { return polynomial_; }
  const std::vector<Term>& terms() const { return terms_; }
  double max_frequency() const;

  double evaluate(double t) const;
  TrigSeries derivative() const;
  TrigSeries primitive() const;
  TrigSeries scaled(double c) const;

 private:
  double horizon_;
  LocalPolynomial polynomial_;
  std::vector<Term> terms_;
};

/// Scalar control on [0, T]. Evaluation is exact for the stored form.
class ControlSignal {
 public:
  using Representation = std::variant<PiecewisePolynomial, TrigSeries>;

  explicit ControlSignal(PiecewisePolynomial pp) : rep_(std::move(pp)) {}
  explicit ControlSignal(TrigSeries trig) : rep_(std::move(trig)) {}

  static ControlSignal Constant(double horizon, double value);
  static ControlSignal Zero(double horizon) { return Constant(horizon, 0.0); }
  /// a sin(omega t).
  static ControlSignal Sine(double horizon, double amplitude, double omega);

  const Representation& representation() const { return rep_; }
  bool is_piecewise_polynomial() const {
    return std::holds_alternative<PiecewisePolynomial>(rep_);
  }
  const PiecewisePolynomial& piecewise() const { return std::get<PiecewisePolynomial>(rep_); }
  const TrigSeries& trig() const { return std::get<TrigSeries>(rep_); }

  double horizon() const;
  double operator()(double t) const;
  /// u^{(order)}(t).
  double derivative_value(double t, int order) const;

  ControlSignal derivative() const;
  ControlSignal primitive() const;
  ControlSignal scaled(double c) const;
  /// v(s) = u(factor * s) on [0, T / factor].
  ControlSignal time_rescaled(double factor) const;

  /// Largest m >= -1 with |u^{(j)}(0)| <= tol for all j <= m (capped at 16).
  int vanishing_order(double tol = 0.0) const;

  /// Coefficients in tau of a degree-`degree` polynomial agreeing with u on
  /// [t0, t0 + h]: exact when the interval lies in one cell of a piecewise
  /// polynomial of that degree, Chebyshev interpolation otherwise.
  LocalPolynomial local_polynomial(double t0, double h, int degree) const;

  /// Interior points where the representation may be non-smooth.
  std::vector<double> knots() const;

  std::string describe() const;

 private:
  Representation rep_;
};

/// u_0 = u, u_k = primitive of u_{k-1} vanishing at 0.
ControlSignal iterated_primitive(const ControlSignal& u, int k);

/// m >= 0: max_{j <= m} sup |u^{(j)}|; m = -1: sup |u_1|. Throws
/// std::domain_error when a derivative of order < m jumps at a knot.
double sobolev_sup_norm(const ControlSignal& u, int m);

/// int_0^T u_k(s)^2 ds.
double hk_energy(const ControlSignal& u, int k);

double l2_norm(const ControlSignal& u);

/// L^p norm of the primitive vanishing at 0 (p = 3 gives W^{-1,3}).
double w_minus1_p_norm(const ControlSignal& u, double p = 3.0);

/// Signal literals: a sum of `const(c)`, `sin(a, omega)`, `cos(a, omega)`
/// terms, or a sequence of `poly[c0, c1, ...]` cells (one per uniform cell).
ControlSignal parse_signal(std::string_view text, double horizon);

}  // namespace quadobs
