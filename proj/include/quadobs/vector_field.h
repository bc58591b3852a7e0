#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "quadobs/polynomial.h"
#include "quadobs/rational_matrix.h"

namespace quadobs {

/// Polynomial vector field on R^n: component i is a polynomial in x1..xn.
class PolyVectorField {
 public:
  PolyVectorField() = default;
  explicit PolyVectorField(std::vector<Polynomial> components);

  static PolyVectorField Zero(int dim);
  /// The constant field e_{index+1}.
  static PolyVectorField Basis(int dim, int index);
  static PolyVectorField Constant(const RationalVector& value);

  int dim() const { return static_cast<int>(components_.size()); }
  const Polynomial& operator[](int i) const { return components_[i]; }
  const std::vector<Polynomial>& components() const { return components_; }

  bool is_zero() const;
  int degree() const;

  RationalVector evaluate(const RationalVector& x) const;
  Eigen::VectorXd evaluate(const Eigen::VectorXd& x) const;
  RationalVector at_origin() const;

  /// Jacobian D f as a matrix of polynomials, row i = gradient of f_i.
  std::vector<std::vector<Polynomial>> jacobian() const;
  RationalMatrix jacobian_at(const RationalVector& x) const;

  PolyVectorField operator+(const PolyVectorField& other) const;
  PolyVectorField operator-(const PolyVectorField& other) const;
  PolyVectorField operator-() const;
  PolyVectorField operator*(const Rational& c) const;
  bool operator==(const PolyVectorField& other) const = default;

  PolyVectorField normalized() const;

  /// Linear change of coordinates x = Q y: returns y' = Q^{-1} f(Q y).
  PolyVectorField conjugate(const RationalMatrix& q) const;

  std::string to_string() const;

 private:
  std::vector<Polynomial> components_;
};

/// [f, g] = Dg f - Df g.
PolyVectorField lie_bracket(const PolyVectorField& f, const PolyVectorField& g);

/// ad^k_{f0}(f1): ad^0 = f1, ad^k = [f0, ad^{k-1}].
PolyVectorField ad_iterate(const PolyVectorField& f0, const PolyVectorField& f1,
                           int k);

/// ad^0 .. ad^{kmax}, computed incrementally.
std::vector<PolyVectorField> ad_sequence(const PolyVectorField& f0,
                                         const PolyVectorField& f1, int kmax);

/// Linearization data of x' = f0(x) + u f1(x) at the equilibrium 0.
struct LinearPair {
  RationalMatrix a;
  RationalVector b;

  int dim() const { return a.rows(); }
};

/// A = D f0(0), b = f1(0). Throws std::domain_error when f0(0) != 0.
LinearPair linearize(const PolyVectorField& f0, const PolyVectorField& f1);

/// Double-precision evaluator for repeated evaluation inside integrators.
class CompiledField {
 public:
  CompiledField() = default;
  explicit CompiledField(const PolyVectorField& field);

  int dim() const { return dim_; }
  void evaluate(const double* x, double* out) const;
  Eigen::VectorXd operator()(const Eigen::VectorXd& x) const;

 private:
  struct Term {
    double coefficient;
    std::vector<std::pair<int, int>> factors;  // (variable, exponent)
  };
  int dim_ = 0;
  std::vector<std::vector<Term>> components_;
};

}  // namespace quadobs
