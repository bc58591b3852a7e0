#include "quadobs/polynomial.h"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace quadobs {

Polynomial Polynomial::Constant(int num_vars, const Rational& c) {
  Polynomial p(num_vars);
  p.add_term(Monomial(num_vars, 0), c);
  return p;
}

Polynomial Polynomial::Variable(int num_vars, int index) {
  if (index < 0 || index >= num_vars) {
    throw std::out_of_range("Polynomial::Variable: index " +
                            std::to_string(index + 1) + " outside 1.." +
                            std::to_string(num_vars));
  }
  Polynomial p(num_vars);
  Monomial m(num_vars, 0);
  m[index] = 1;
  p.add_term(m, 1);
  return p;
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) {
    d = std::max(d, std::accumulate(m.begin(), m.end(), 0));
  }
  return d;
}

void Polynomial::add_term(const Monomial& monomial, const Rational& coefficient) {
  if (static_cast<int>(monomial.size()) != num_vars_) {
    throw std::invalid_argument("Polynomial::add_term: monomial arity mismatch");
  }
  if (coefficient == 0) return;
  auto [it, inserted] = terms_.try_emplace(monomial, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational Polynomial::coefficient(const Monomial& monomial) const {
  auto it = terms_.find(monomial);
  return it == terms_.end() ? Rational(0) : it->second;
}

Rational Polynomial::constant_term() const {
  return coefficient(Monomial(num_vars_, 0));
}

void Polynomial::check_compatible(const Polynomial& other) const {
  if (num_vars_ != other.num_vars_) {
    throw std::invalid_argument("Polynomial: variable count mismatch");
  }
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  check_compatible(other);
  Polynomial out = *this;
  for (const auto& [m, c] : other.terms_) out.add_term(m, c);
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
  check_compatible(other);
  Polynomial out = *this;
  for (const auto& [m, c] : other.terms_) out.add_term(m, -c);
  return out;
}

Polynomial Polynomial::operator-() const {
  Polynomial out(num_vars_);
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
  return out;
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  check_compatible(other);
  Polynomial out(num_vars_);
  Monomial product(num_vars_);
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : other.terms_) {
      for (int i = 0; i < num_vars_; ++i) product[i] = ma[i] + mb[i];
      out.add_term(product, ca * cb);
    }
  }
  return out;
}

Polynomial Polynomial::operator*(const Rational& c) const {
  if (c == 0) return Polynomial(num_vars_);
  Polynomial out(num_vars_);
  for (const auto& [m, a] : terms_) out.terms_.emplace(m, a * c);
  return out;
}

Polynomial Polynomial::pow(int exponent) const {
  if (exponent < 0) throw std::invalid_argument("Polynomial::pow: negative exponent");
  Polynomial result = Constant(num_vars_, 1);
  Polynomial base = *this;
  while (exponent > 0) {
    if (exponent & 1) result = result * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

Polynomial Polynomial::derivative(int var) const {
  if (var < 0 || var >= num_vars_) {
    throw std::out_of_range("Polynomial::derivative: variable out of range");
  }
  Polynomial out(num_vars_);
  for (const auto& [m, c] : terms_) {
    if (m[var] == 0) continue;
    Monomial d = m;
    d[var] -= 1;
    out.add_term(d, c * m[var]);
  }
  return out;
}

Rational Polynomial::evaluate(const RationalVector& x) const {
  if (static_cast<int>(x.size()) != num_vars_) {
    throw std::invalid_argument("Polynomial::evaluate: point dimension mismatch");
  }
  Rational sum = 0;
  for (const auto& [m, c] : terms_) {
    Rational term = c;
    for (int i = 0; i < num_vars_; ++i) {
      for (int e = 0; e < m[i]; ++e) term *= x[i];
    }
    sum += term;
  }
  return sum;
}

double Polynomial::evaluate(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != num_vars_) {
    throw std::invalid_argument("Polynomial::evaluate: point dimension mismatch");
  }
  double sum = 0.0;
  for (const auto& [m, c] : terms_) {
    double term = c.get_d();
    for (int i = 0; i < num_vars_; ++i) {
      for (int e = 0; e < m[i]; ++e) term *= x[i];
    }
    sum += term;
  }
  return sum;
}

Polynomial Polynomial::normalized() const {
  Polynomial out(num_vars_);
  for (const auto& [m, c] : terms_) {
    Rational canonical = c;
    canonical.canonicalize();
    out.add_term(m, canonical);
  }
  return out;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest total degree first reads more naturally.
  std::vector<std::pair<Monomial, Rational>> ordered(terms_.begin(), terms_.end());
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
    return std::accumulate(a.first.begin(), a.first.end(), 0) >
           std::accumulate(b.first.begin(), b.first.end(), 0);
  });
  for (const auto& [m, c] : ordered) {
    const bool is_constant = std::all_of(m.begin(), m.end(), [](int e) { return e == 0; });
    Rational magnitude = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool wrote = false;
    if (is_constant || magnitude != 1) {
      os << magnitude;
      wrote = true;
    }
    for (int i = 0; i < num_vars_; ++i) {
      if (m[i] == 0) continue;
      os << (wrote ? "*" : "") << "x" << (i + 1);
      if (m[i] > 1) os << "^" << m[i];
      wrote = true;
    }
  }
  return os.str();
}

}  // namespace quadobs
