#include "quadobs/signal.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/tools/minima.hpp>
#include <unsupported/Eigen/Polynomials>

#include "quadobs/errors.h"

namespace quadobs {

double horner(const LocalPolynomial& p, double s) {
  double v = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * s + *it;
  return v;
}

LocalPolynomial poly_derivative(const LocalPolynomial& p) {
  if (p.size() <= 1) return {0.0};
  LocalPolynomial d(p.size() - 1);
  for (size_t k = 1; k < p.size(); ++k) d[k - 1] = p[k] * static_cast<double>(k);
  return d;
}

LocalPolynomial poly_antiderivative(const LocalPolynomial& p) {
  LocalPolynomial a(p.size() + 1, 0.0);
  for (size_t k = 0; k < p.size(); ++k) a[k + 1] = p[k] / static_cast<double>(k + 1);
  return a;
}

LocalPolynomial poly_multiply(const LocalPolynomial& a, const LocalPolynomial& b) {
  if (a.empty() || b.empty()) return {0.0};
  LocalPolynomial c(a.size() + b.size() - 1, 0.0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

LocalPolynomial poly_shift(const LocalPolynomial& p, double shift) {
  // Repeated synthetic division (Taylor expansion about `shift`).
  LocalPolynomial c = p;
  const size_t n = c.size();
  for (size_t k = 0; k < n; ++k) {
    for (size_t j = n - 1; j > k; --j) c[j - 1] += shift * c[j];
  }
  return c;
}

std::vector<double> poly_roots_in(const LocalPolynomial& p, double h) {
  // Work in v = s / h on [0, 1].
  std::vector<double> scaled(p.size());
  double scale = 1.0;
  double largest = 0.0;
  for (size_t k = 0; k < p.size(); ++k) {
    scaled[k] = p[k] * scale;
    scale *= h;
    largest = std::max(largest, std::abs(scaled[k]));
  }
  while (scaled.size() > 1 && std::abs(scaled.back()) <= 1e-14 * largest) scaled.pop_back();
  std::vector<double> roots;
  if (scaled.size() <= 1 || largest == 0.0) return roots;
  if (scaled.size() == 2) {
    const double v = -scaled[0] / scaled[1];
    if (v > 0.0 && v < 1.0) roots.push_back(v * h);
    return roots;
  }
  Eigen::VectorXd coeffs = Eigen::Map<Eigen::VectorXd>(scaled.data(), static_cast<Eigen::Index>(scaled.size()));
  Eigen::PolynomialSolver<double, Eigen::Dynamic> solver;
  solver.compute(coeffs);
  for (Eigen::Index i = 0; i < solver.roots().size(); ++i) {
    const auto r = solver.roots()[i];
    if (std::abs(r.imag()) > 1e-7 * std::max(1.0, std::abs(r))) continue;
    if (r.real() > 0.0 && r.real() < 1.0) roots.push_back(r.real() * h);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

double poly_sup_abs(const LocalPolynomial& p, double h) {
  double best = std::max(std::abs(horner(p, 0.0)), std::abs(horner(p, h)));
  for (double s : poly_roots_in(poly_derivative(p), h)) best = std::max(best, std::abs(horner(p, s)));
  return best;
}

namespace {

double integrate_poly(const LocalPolynomial& p, double a, double b) {
  const LocalPolynomial anti = poly_antiderivative(p);
  return horner(anti, b) - horner(anti, a);
}

template <class F>
double gauss_panels(const F& f, double a, double b, int panels) {
  using Rule = boost::math::quadrature::gauss<double, 20>;
  double sum = 0.0;
  const double w = (b - a) / panels;
  for (int i = 0; i < panels; ++i) sum += Rule::integrate(f, a + i * w, a + (i + 1) * w);
  return sum;
}

int panels_for(const TrigSeries& s) {
  const double periods = s.max_frequency() * s.horizon() / (2.0 * std::numbers::pi);
  return std::max(16, static_cast<int>(std::ceil(4.0 * periods)));
}

template <class F>
double sup_abs_sampled(const F& f, double horizon, int samples) {
  int best_index = 0;
  double best = -1.0;
  for (int i = 0; i <= samples; ++i) {
    const double v = std::abs(f(horizon * i / samples));
    if (v > best) {
      best = v;
      best_index = i;
    }
  }
  const double lo = horizon * std::max(0, best_index - 1) / samples;
  const double hi = horizon * std::min(samples, best_index + 1) / samples;
  const auto refined = boost::math::tools::brent_find_minima(
      [&](double t) { return -std::abs(f(t)); }, lo, hi, 52);
  return std::max(best, -refined.second);
}

}  // namespace

// ---------------------------------------------------------------------------
// PiecewisePolynomial

PiecewisePolynomial::PiecewisePolynomial(double horizon, std::vector<LocalPolynomial> cells)
    : horizon_(horizon), cells_(std::move(cells)) {
  if (!(horizon > 0.0)) throw std::invalid_argument("PiecewisePolynomial: horizon must be > 0");
  if (cells_.empty()) throw std::invalid_argument("PiecewisePolynomial: no cells");
  for (auto& c : cells_)
    if (c.empty()) c.push_back(0.0);
}

int PiecewisePolynomial::degree() const {
  size_t d = 0;
  for (const auto& c : cells_) d = std::max(d, c.size() - 1);
  return static_cast<int>(d);
}

int PiecewisePolynomial::locate(double t) const {
  const int i = static_cast<int>(std::floor(t / cell_width()));
  return std::clamp(i, 0, num_cells() - 1);
}

double PiecewisePolynomial::evaluate(double t) const {
  const int i = locate(t);
  return horner(cells_[i], t - cell_start(i));
}

PiecewisePolynomial PiecewisePolynomial::derivative() const {
  std::vector<LocalPolynomial> cells;
  for (const auto& c : cells_) cells.push_back(poly_derivative(c));
  return PiecewisePolynomial(horizon_, std::move(cells));
}

PiecewisePolynomial PiecewisePolynomial::primitive() const {
  std::vector<LocalPolynomial> cells;
  double offset = 0.0;
  const double h = cell_width();
  for (const auto& c : cells_) {
    LocalPolynomial a = poly_antiderivative(c);
    a[0] = offset;
    offset = horner(a, h);
    cells.push_back(std::move(a));
  }
  return PiecewisePolynomial(horizon_, std::move(cells));
}

PiecewisePolynomial PiecewisePolynomial::scaled(double c) const {
  std::vector<LocalPolynomial> cells = cells_;
  for (auto& cell : cells)
    for (auto& x : cell) x *= c;
  return PiecewisePolynomial(horizon_, std::move(cells));
}

PiecewisePolynomial PiecewisePolynomial::refined(int factor) const {
  if (factor < 1) throw std::invalid_argument("refined: factor must be >= 1");
  const double sub = cell_width() / factor;
  std::vector<LocalPolynomial> cells;
  for (const auto& c : cells_)
    for (int k = 0; k < factor; ++k) cells.push_back(poly_shift(c, k * sub));
  return PiecewisePolynomial(horizon_, std::move(cells));
}

double PiecewisePolynomial::max_jump(int order) const {
  const double h = cell_width();
  double jump = 0.0;
  std::vector<LocalPolynomial> d = cells_;
  for (int k = 0; k < order; ++k)
    for (auto& c : d) c = poly_derivative(c);
  for (int i = 0; i + 1 < num_cells(); ++i) {
    jump = std::max(jump, std::abs(horner(d[i], h) - horner(d[i + 1], 0.0)));
  }
  return jump;
}

// ---------------------------------------------------------------------------
// TrigSeries

TrigSeries::TrigSeries(double horizon, LocalPolynomial polynomial, std::vector<Term> terms)
    : horizon_(horizon), polynomial_(std::move(polynomial)), terms_(std::move(terms)) {
  if (!(horizon > 0.0)) throw std::invalid_argument("TrigSeries: horizon must be > 0");
  if (polynomial_.empty()) polynomial_.push_back(0.0);
  for (const auto& t : terms_) {
    if (t.omega == 0.0) throw std::invalid_argument("TrigSeries: zero frequency; use the polynomial part");
  }
}

double TrigSeries::max_frequency() const {
  double w = 0.0;
  for (const auto& t : terms_) w = std::max(w, std::abs(t.omega));
  return w;
}

double TrigSeries::evaluate(double t) const {
  double v = horner(polynomial_, t);
  for (const auto& term : terms_) {
    v += term.sin_coeff * std::sin(term.omega * t) + term.cos_coeff * std::cos(term.omega * t);
  }
  return v;
}

TrigSeries TrigSeries::derivative() const {
  std::vector<Term> terms;
  for (const auto& t : terms_) terms.push_back({t.omega, -t.omega * t.cos_coeff, t.omega * t.sin_coeff});
  return TrigSeries(horizon_, poly_derivative(polynomial_), std::move(terms));
}

TrigSeries TrigSeries::primitive() const {
  LocalPolynomial poly = poly_antiderivative(polynomial_);
  std::vector<Term> terms;
  for (const auto& t : terms_) {
    // int_0^t a sin(ws) = a (1 - cos wt) / w ;  int_0^t b cos(ws) = b sin(wt) / w
    poly[0] += t.sin_coeff / t.omega;
    terms.push_back({t.omega, t.cos_coeff / t.omega, -t.sin_coeff / t.omega});
  }
  return TrigSeries(horizon_, std::move(poly), std::move(terms));
}

TrigSeries TrigSeries::scaled(double c) const {
  LocalPolynomial poly = polynomial_;
  for (auto& x : poly) x *= c;
  std::vector<Term> terms = terms_;
  for (auto& t : terms) {
    t.sin_coeff *= c;
    t.cos_coeff *= c;
  }
  return TrigSeries(horizon_, std::move(poly), std::move(terms));
}

// ---------------------------------------------------------------------------
// ControlSignal

ControlSignal ControlSignal::Constant(double horizon, double value) {
  return ControlSignal(PiecewisePolynomial(horizon, {{value}}));
}

ControlSignal ControlSignal::Sine(double horizon, double amplitude, double omega) {
  return ControlSignal(TrigSeries(horizon, {0.0}, {{omega, amplitude, 0.0}}));
}

double ControlSignal::horizon() const {
  return std::visit([](const auto& r) { return r.horizon(); }, rep_);
}

double ControlSignal::operator()(double t) const {
  return std::visit([t](const auto& r) { return r.evaluate(t); }, rep_);
}

double ControlSignal::derivative_value(double t, int order) const {
  if (order < 0) throw std::invalid_argument("derivative_value: negative order");
  if (is_piecewise_polynomial()) {
    const auto& pp = piecewise();
    const int i = pp.locate(t);
    LocalPolynomial c = pp.cell(i);
    for (int k = 0; k < order; ++k) c = poly_derivative(c);
    return horner(c, t - pp.cell_start(i));
  }
  TrigSeries s = trig();
  for (int k = 0; k < order; ++k) s = s.derivative();
  return s.evaluate(t);
}

ControlSignal ControlSignal::derivative() const {
  return std::visit([](const auto& r) { return ControlSignal(r.derivative()); }, rep_);
}

ControlSignal ControlSignal::primitive() const {
  return std::visit([](const auto& r) { return ControlSignal(r.primitive()); }, rep_);
}

ControlSignal ControlSignal::scaled(double c) const {
  return std::visit([c](const auto& r) { return ControlSignal(r.scaled(c)); }, rep_);
}

ControlSignal ControlSignal::time_rescaled(double factor) const {
  if (!(factor > 0.0)) throw std::invalid_argument("time_rescaled: factor must be > 0");
  if (is_piecewise_polynomial()) {
    const auto& pp = piecewise();
    std::vector<LocalPolynomial> cells;
    for (int i = 0; i < pp.num_cells(); ++i) {
      LocalPolynomial c = pp.cell(i);
      double f = 1.0;
      for (auto& x : c) {
        x *= f;
        f *= factor;
      }
      cells.push_back(std::move(c));
    }
    return ControlSignal(PiecewisePolynomial(pp.horizon() / factor, std::move(cells)));
  }
  const auto& s = trig();
  LocalPolynomial poly = s.polynomial();
  double f = 1.0;
  for (auto& x : poly) {
    x *= f;
    f *= factor;
  }
  std::vector<TrigSeries::Term> terms = s.terms();
  for (auto& t : terms) t.omega *= factor;
  return ControlSignal(TrigSeries(s.horizon() / factor, std::move(poly), std::move(terms)));
}

int ControlSignal::vanishing_order(double tol) const {
  int m = -1;
  for (int j = 0; j <= 16; ++j) {
    if (std::abs(derivative_value(0.0, j)) > tol) break;
    m = j;
  }
  return m;
}

LocalPolynomial ControlSignal::local_polynomial(double t0, double h, int degree) const {
  if (is_piecewise_polynomial()) {
    const auto& pp = piecewise();
    const int i = pp.locate(t0 + 0.5 * h);
    const double start = pp.cell_start(i);
    const double end = start + pp.cell_width();
    const double slack = 1e-12 * pp.horizon();
    if (t0 >= start - slack && t0 + h <= end + slack &&
        static_cast<int>(pp.cell(i).size()) - 1 <= degree) {
      return poly_shift(pp.cell(i), t0 - start);
    }
  }
  const int n = degree + 1;
  Eigen::MatrixXd v(n, n);
  Eigen::VectorXd rhs(n);
  for (int r = 0; r < n; ++r) {
    const double node = 0.5 * (1.0 - std::cos(std::numbers::pi * (r + 0.5) / n));
    double power = 1.0;
    for (int k = 0; k < n; ++k) {
      v(r, k) = power;
      power *= node;
    }
    rhs[r] = (*this)(t0 + node * h);
  }
  const Eigen::VectorXd c = v.partialPivLu().solve(rhs);
  LocalPolynomial out(n);
  double scale = 1.0;
  for (int k = 0; k < n; ++k) {
    out[k] = c[k] / scale;
    scale *= h;
  }
  return out;
}

std::vector<double> ControlSignal::knots() const {
  std::vector<double> k;
  if (is_piecewise_polynomial()) {
    const auto& pp = piecewise();
    for (int i = 1; i < pp.num_cells(); ++i) k.push_back(pp.cell_start(i));
  }
  return k;
}

std::string ControlSignal::describe() const {
  std::ostringstream os;
  os.precision(6);
  if (is_piecewise_polynomial()) {
    const auto& pp = piecewise();
    os << "piecewise polynomial: " << pp.num_cells() << " cells, degree " << pp.degree()
       << ", T=" << pp.horizon();
  } else {
    const auto& s = trig();
    os << "trigonometric series: " << s.terms().size() << " terms, max frequency "
       << s.max_frequency() << ", T=" << s.horizon();
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Norms

ControlSignal iterated_primitive(const ControlSignal& u, int k) {
  if (k < 0) throw std::invalid_argument("iterated_primitive: k must be >= 0");
  ControlSignal out = u;
  for (int j = 0; j < k; ++j) out = out.primitive();
  return out;
}

namespace {

double sup_abs(const ControlSignal& u) {
  if (u.is_piecewise_polynomial()) {
    const auto& pp = u.piecewise();
    double best = 0.0;
    for (int i = 0; i < pp.num_cells(); ++i) best = std::max(best, poly_sup_abs(pp.cell(i), pp.cell_width()));
    return best;
  }
  const int samples = std::max(4096, 64 * panels_for(u.trig()));
  return sup_abs_sampled(u, u.horizon(), samples);
}

}  // namespace

double sobolev_sup_norm(const ControlSignal& u, int m) {
  if (m < -1) throw std::invalid_argument("sobolev_sup_norm: order must be >= -1");
  if (m == -1) return sup_abs(u.primitive());
  if (u.is_piecewise_polynomial()) {
    const auto& pp = u.piecewise();
    for (int j = 0; j < m; ++j) {
      double scale = 0.0;
      ControlSignal dj = iterated_primitive(u, 0);
      for (int k = 0; k < j; ++k) dj = dj.derivative();
      scale = std::max(1.0, sup_abs(dj));
      if (pp.max_jump(j) > 1e-9 * scale) {
        throw std::domain_error("sobolev_sup_norm: derivative of order " + std::to_string(j) +
                                " jumps at a knot; signal is not W^{" + std::to_string(m) +
                                ",inf}");
      }
    }
  }
  double best = 0.0;
  ControlSignal d = u;
  for (int j = 0; j <= m; ++j) {
    best = std::max(best, sup_abs(d));
    if (j < m) d = d.derivative();
  }
  return best;
}

double hk_energy(const ControlSignal& u, int k) {
  if (k < 0) throw std::invalid_argument("hk_energy: k must be >= 0");
  const ControlSignal uk = iterated_primitive(u, k);
  if (uk.is_piecewise_polynomial()) {
    const auto& pp = uk.piecewise();
    double sum = 0.0;
    for (int i = 0; i < pp.num_cells(); ++i) {
      sum += integrate_poly(poly_multiply(pp.cell(i), pp.cell(i)), 0.0, pp.cell_width());
    }
    return sum;
  }
  return gauss_panels([&](double t) { const double v = uk(t); return v * v; }, 0.0,
                      uk.horizon(), panels_for(uk.trig()));
}

double l2_norm(const ControlSignal& u) { return std::sqrt(hk_energy(u, 0)); }

double w_minus1_p_norm(const ControlSignal& u, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("w_minus1_p_norm: p must be >= 1");
  const ControlSignal primitive = u.primitive();
  double integral = 0.0;
  const double rounded = std::round(p);
  if (primitive.is_piecewise_polynomial() && rounded == p) {
    const auto& pp = primitive.piecewise();
    const int power = static_cast<int>(rounded);
    for (int i = 0; i < pp.num_cells(); ++i) {
      LocalPolynomial powered{1.0};
      for (int e = 0; e < power; ++e) powered = poly_multiply(powered, pp.cell(i));
      std::vector<double> breaks{0.0};
      for (double r : poly_roots_in(pp.cell(i), pp.cell_width())) breaks.push_back(r);
      breaks.push_back(pp.cell_width());
      for (size_t b = 0; b + 1 < breaks.size(); ++b) {
        integral += std::abs(integrate_poly(powered, breaks[b], breaks[b + 1]));
      }
    }
  } else {
    const int panels = primitive.is_piecewise_polynomial()
                           ? 4 * primitive.piecewise().num_cells()
                           : panels_for(primitive.trig());
    integral = gauss_panels([&](double t) { return std::pow(std::abs(primitive(t)), p); }, 0.0,
                            primitive.horizon(), panels);
  }
  return std::pow(integral, 1.0 / p);
}

// ---------------------------------------------------------------------------
// Literals

namespace {

class SignalLiteralParser {
 public:
  SignalLiteralParser(std::string_view text, double horizon) : text_(text), horizon_(horizon) {}

  ControlSignal parse() {
    skip();
    if (text_.substr(pos_, 5) == "poly[") return parse_cells();
    LocalPolynomial poly{0.0};
    std::vector<TrigSeries::Term> terms;
    bool any = false;
    while (true) {
      skip();
      double sign = 1.0;
      if (any) {
        if (at('+')) {
          ++pos_;
        } else if (at('-')) {
          ++pos_;
          sign = -1.0;
        } else {
          break;
        }
        skip();
      }
      const std::string name = identifier();
      const auto args = arguments('(', ')');
      if (name == "const") {
        require_args(name, args, 1);
        poly[0] += sign * args[0];
      } else if (name == "sin" || name == "cos") {
        require_args(name, args, 2);
        if (args[1] == 0.0) {
          if (name == "cos") poly[0] += sign * args[0];
        } else {
          terms.push_back({args[1], name == "sin" ? sign * args[0] : 0.0,
                           name == "cos" ? sign * args[0] : 0.0});
        }
      } else {
        fail("unknown signal term '" + name + "'");
      }
      any = true;
    }
    skip();
    if (pos_ != text_.size()) fail("unexpected trailing text");
    if (terms.empty()) return ControlSignal(PiecewisePolynomial(horizon_, {poly}));
    return ControlSignal(TrigSeries(horizon_, poly, std::move(terms)));
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, 0, static_cast<int>(pos_) + 1);
  }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at(char c) const { return pos_ < text_.size() && text_[pos_] == c; }

  std::string identifier() {
    const size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a signal term");
    return std::string(text_.substr(start, pos_ - start));
  }

  std::vector<double> arguments(char open, char close) {
    skip();
    if (!at(open)) fail(std::string("expected '") + open + "'");
    ++pos_;
    std::vector<double> values;
    while (true) {
      skip();
      const size_t start = pos_;
      while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != close) ++pos_;
      if (pos_ >= text_.size()) fail(std::string("expected '") + close + "'");
      const std::string token(text_.substr(start, pos_ - start));
      try {
        size_t used = 0;
        values.push_back(std::stod(token, &used));
        while (used < token.size() && std::isspace(static_cast<unsigned char>(token[used]))) ++used;
        if (used != token.size()) throw std::invalid_argument(token);
      } catch (const std::exception&) {
        pos_ = start;
        fail("malformed number '" + token + "'");
      }
      if (text_[pos_] == close) {
        ++pos_;
        return values;
      }
      ++pos_;
    }
  }

  void require_args(const std::string& name, const std::vector<double>& args, size_t n) const {
    if (args.size() != n) fail(name + " expects " + std::to_string(n) + " argument(s)");
  }

  ControlSignal parse_cells() {
    std::vector<LocalPolynomial> cells;
    while (true) {
      skip();
      if (pos_ >= text_.size()) break;
      if (text_.substr(pos_, 4) != "poly") fail("expected poly[...]");
      pos_ += 4;
      cells.push_back(arguments('[', ']'));
      skip();
      if (at(';') || at('|')) ++pos_;
    }
    return ControlSignal(PiecewisePolynomial(horizon_, std::move(cells)));
  }

  std::string_view text_;
  double horizon_;
  size_t pos_ = 0;
};

}  // namespace

ControlSignal parse_signal(std::string_view text, double horizon) {
  return SignalLiteralParser(text, horizon).parse();
}

}  // namespace quadobs
