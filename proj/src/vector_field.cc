#include "quadobs/vector_field.h"

#include <sstream>
#include <stdexcept>

namespace quadobs {

namespace {

void require_same_dim(const PolyVectorField& f, const PolyVectorField& g,
                      const char* where) {
  if (f.dim() != g.dim()) {
    throw std::invalid_argument(std::string(where) + ": dimension mismatch (" +
                                std::to_string(f.dim()) + " vs " +
                                std::to_string(g.dim()) + ")");
  }
}

}  // namespace

PolyVectorField::PolyVectorField(std::vector<Polynomial> components)
    : components_(std::move(components)) {
  if (components_.empty()) {
    throw std::invalid_argument("PolyVectorField: dimension must be positive");
  }
  const int n = dim();
  for (const auto& p : components_) {
    if (p.num_vars() != n) {
      throw std::invalid_argument(
          "PolyVectorField: component uses " + std::to_string(p.num_vars()) +
          " variables, expected " + std::to_string(n));
    }
  }
}

PolyVectorField PolyVectorField::Zero(int dim) {
  return PolyVectorField(std::vector<Polynomial>(dim, Polynomial(dim)));
}

PolyVectorField PolyVectorField::Basis(int dim, int index) {
  std::vector<Polynomial> c(dim, Polynomial(dim));
  c.at(index) = Polynomial::Constant(dim, 1);
  return PolyVectorField(std::move(c));
}

PolyVectorField PolyVectorField::Constant(const RationalVector& value) {
  const int n = static_cast<int>(value.size());
  std::vector<Polynomial> c;
  c.reserve(n);
  for (const auto& v : value) c.push_back(Polynomial::Constant(n, v));
  return PolyVectorField(std::move(c));
}

bool PolyVectorField::is_zero() const {
  for (const auto& p : components_)
    if (!p.is_zero()) return false;
  return true;
}

int PolyVectorField::degree() const {
  int d = -1;
  for (const auto& p : components_) d = std::max(d, p.degree());
  return d;
}

RationalVector PolyVectorField::evaluate(const RationalVector& x) const {
  RationalVector out;
  out.reserve(components_.size());
  for (const auto& p : components_) out.push_back(p.evaluate(x));
  return out;
}

Eigen::VectorXd PolyVectorField::evaluate(const Eigen::VectorXd& x) const {
  Eigen::VectorXd out(dim());
  const std::span<const double> view(x.data(), static_cast<size_t>(x.size()));
  for (int i = 0; i < dim(); ++i) out[i] = components_[i].evaluate(view);
  return out;
}

RationalVector PolyVectorField::at_origin() const {
  RationalVector out;
  out.reserve(components_.size());
  for (const auto& p : components_) out.push_back(p.constant_term());
  return out;
}

std::vector<std::vector<Polynomial>> PolyVectorField::jacobian() const {
  const int n = dim();
  std::vector<std::vector<Polynomial>> jac(n);
  for (int i = 0; i < n; ++i) {
    jac[i].reserve(n);
    for (int j = 0; j < n; ++j) jac[i].push_back(components_[i].derivative(j));
  }
  return jac;
}

RationalMatrix PolyVectorField::jacobian_at(const RationalVector& x) const {
  const int n = dim();
  RationalMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = components_[i].derivative(j).evaluate(x);
  return m;
}

PolyVectorField PolyVectorField::operator+(const PolyVectorField& other) const {
  require_same_dim(*this, other, "PolyVectorField +");
  std::vector<Polynomial> c;
  for (int i = 0; i < dim(); ++i) c.push_back(components_[i] + other.components_[i]);
  return PolyVectorField(std::move(c));
}

PolyVectorField PolyVectorField::operator-(const PolyVectorField& other) const {
  require_same_dim(*this, other, "PolyVectorField -");
  std::vector<Polynomial> c;
  for (int i = 0; i < dim(); ++i) c.push_back(components_[i] - other.components_[i]);
  return PolyVectorField(std::move(c));
}

PolyVectorField PolyVectorField::operator-() const {
  std::vector<Polynomial> c;
  for (const auto& p : components_) c.push_back(-p);
  return PolyVectorField(std::move(c));
}

PolyVectorField PolyVectorField::operator*(const Rational& s) const {
  std::vector<Polynomial> c;
  for (const auto& p : components_) c.push_back(p * s);
  return PolyVectorField(std::move(c));
}

PolyVectorField PolyVectorField::normalized() const {
  std::vector<Polynomial> c;
  for (const auto& p : components_) c.push_back(p.normalized());
  return PolyVectorField(std::move(c));
}

PolyVectorField PolyVectorField::conjugate(const RationalMatrix& q) const {
  const int n = dim();
  if (q.rows() != n || q.cols() != n) {
    throw std::invalid_argument("conjugate: matrix size mismatch");
  }
  // Substitute x_i = sum_j q_ij y_j into every component.
  std::vector<Polynomial> substituted_vars;
  for (int i = 0; i < n; ++i) {
    Polynomial xi(n);
    for (int j = 0; j < n; ++j) xi = xi + Polynomial::Variable(n, j) * q(i, j);
    substituted_vars.push_back(std::move(xi));
  }
  std::vector<Polynomial> substituted;
  for (const auto& p : components_) {
    Polynomial out(n);
    for (const auto& [m, c] : p.terms()) {
      Polynomial term = Polynomial::Constant(n, c);
      for (int i = 0; i < n; ++i) {
        if (m[i] > 0) term = term * substituted_vars[i].pow(m[i]);
      }
      out = out + term;
    }
    substituted.push_back(std::move(out));
  }
  const RationalMatrix q_inv = inverse(q);
  std::vector<Polynomial> result;
  for (int i = 0; i < n; ++i) {
    Polynomial out(n);
    for (int j = 0; j < n; ++j) out = out + substituted[j] * q_inv(i, j);
    result.push_back(std::move(out));
  }
  return PolyVectorField(std::move(result));
}

std::string PolyVectorField::to_string() const {
  std::ostringstream os;
  for (int i = 0; i < dim(); ++i) os << (i ? "; " : "") << components_[i].to_string();
  return os.str();
}

PolyVectorField lie_bracket(const PolyVectorField& f, const PolyVectorField& g) {
  require_same_dim(f, g, "lie_bracket");
  const int n = f.dim();
  std::vector<Polynomial> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    Polynomial c(n);
    for (int j = 0; j < n; ++j) {
      if (!f[j].is_zero()) c = c + g[i].derivative(j) * f[j];
      if (!g[j].is_zero()) c = c - f[i].derivative(j) * g[j];
    }
    out.push_back(std::move(c));
  }
  return PolyVectorField(std::move(out));
}

PolyVectorField ad_iterate(const PolyVectorField& f0, const PolyVectorField& f1,
                           int k) {
  if (k < 0) throw std::invalid_argument("ad_iterate: negative order");
  return ad_sequence(f0, f1, k).back();
}

std::vector<PolyVectorField> ad_sequence(const PolyVectorField& f0,
                                         const PolyVectorField& f1, int kmax) {
  require_same_dim(f0, f1, "ad_sequence");
  std::vector<PolyVectorField> seq{f1};
  for (int k = 1; k <= kmax; ++k) seq.push_back(lie_bracket(f0, seq.back()));
  return seq;
}

LinearPair linearize(const PolyVectorField& f0, const PolyVectorField& f1) {
  require_same_dim(f0, f1, "linearize");
  if (!is_zero(f0.at_origin())) {
    throw std::domain_error("linearize: not an equilibrium, f0(0) = " +
                            to_string(f0.at_origin()));
  }
  return LinearPair{f0.jacobian_at(RationalVector(f0.dim(), 0)), f1.at_origin()};
}

CompiledField::CompiledField(const PolyVectorField& field) : dim_(field.dim()) {
  components_.resize(dim_);
  for (int i = 0; i < dim_; ++i) {
    for (const auto& [m, c] : field[i].terms()) {
      Term term{c.get_d(), {}};
      for (int v = 0; v < dim_; ++v)
        if (m[v] > 0) term.factors.emplace_back(v, m[v]);
      components_[i].push_back(std::move(term));
    }
  }
}

void CompiledField::evaluate(const double* x, double* out) const {
  for (int i = 0; i < dim_; ++i) {
    double sum = 0.0;
    for (const auto& term : components_[i]) {
      double value = term.coefficient;
      for (const auto& [var, exponent] : term.factors) {
        for (int e = 0; e < exponent; ++e) value *= x[var];
      }
      sum += value;
    }
    out[i] = sum;
  }
}

Eigen::VectorXd CompiledField::operator()(const Eigen::VectorXd& x) const {
  Eigen::VectorXd out(dim_);
  evaluate(x.data(), out.data());
  return out;
}

}  // namespace quadobs
