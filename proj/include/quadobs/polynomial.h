#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "quadobs/rational_matrix.h"

namespace quadobs {

/// Exponents (e_1, ..., e_n) of the monomial x1^e_1 ... xn^e_n.
using Monomial = std::vector<int>;

/// Multivariate polynomial with exact rational coefficients. Zero
/// coefficients are never stored, so equality is map equality.
class Polynomial {
 public:
  explicit Polynomial(int num_vars = 0) : num_vars_(num_vars) {}

  static Polynomial Constant(int num_vars, const Rational& c);
  /// The coordinate x_{index+1} (0-based index).
  static Polynomial Variable(int num_vars, int index);

  int num_vars() const { return num_vars_; }
  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;

  void add_term(const Monomial& monomial, const Rational& coefficient);
  Rational coefficient(const Monomial& monomial) const;
  Rational constant_term() const;

  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial operator*(const Rational& c) const;
  Polynomial pow(int exponent) const;
  bool operator==(const Polynomial& other) const = default;

  Polynomial derivative(int var) const;

  Rational evaluate(const RationalVector& x) const;
  double evaluate(std::span<const double> x) const;

  /// Re-canonicalizes every coefficient and drops zeros.
  Polynomial normalized() const;

  std::string to_string() const;

 private:
  void check_compatible(const Polynomial& other) const;

  int num_vars_;
  std::map<Monomial, Rational> terms_;
};

}  // namespace quadobs
