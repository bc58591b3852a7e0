#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>
#include <gmpxx.h>

namespace quadobs {

using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

/// Dense matrix over the rationals. Small sizes only (state dimension).
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(int rows, int cols);

  static RationalMatrix Identity(int n);
  static RationalMatrix FromColumns(const std::vector<RationalVector>& columns,
                                    int rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rational& operator()(int r, int c) { return data_[r * cols_ + c]; }
  const Rational& operator()(int r, int c) const { return data_[r * cols_ + c]; }

  RationalVector column(int c) const;
  RationalMatrix transpose() const;

  RationalMatrix operator+(const RationalMatrix& other) const;
  RationalMatrix operator-(const RationalMatrix& other) const;
  RationalMatrix operator*(const RationalMatrix& other) const;
  RationalVector operator*(const RationalVector& v) const;
  bool operator==(const RationalMatrix& other) const;

  bool is_symmetric() const;
  bool is_zero() const;

  Eigen::MatrixXd to_double() const;
  std::string to_string() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> data_;
};

RationalVector operator-(const RationalVector& v);
RationalVector operator-(const RationalVector& a, const RationalVector& b);
Rational dot(const RationalVector& a, const RationalVector& b);
bool is_zero(const RationalVector& v);
Eigen::VectorXd to_double(const RationalVector& v);
std::string to_string(const RationalVector& v);

/// Rank by fraction-free (Bareiss) elimination after clearing denominators
/// row by row. Exact.
int rank(const RationalMatrix& m);

/// Rank of the matrix whose columns are `vectors` (all of length `dim`).
int rank_of(const std::vector<RationalVector>& vectors, int dim);

/// Greedy selection, in order, of vectors that increase the span.
std::vector<RationalVector> independent_subset(
    const std::vector<RationalVector>& vectors, int dim);

/// Nonzero rows of the reduced row echelon form: a canonical basis of the
/// row space.
std::vector<RationalVector> rref_rows(const RationalMatrix& m);

/// Gauss-Jordan inverse over Q. Throws std::domain_error when singular.
RationalMatrix inverse(const RationalMatrix& m);

/// Orthogonal projector B (B^T B)^{-1} B^T onto span(basis), standard inner
/// product. Empty basis gives the zero matrix.
RationalMatrix orthogonal_projector(const std::vector<RationalVector>& basis,
                                    int dim);

bool in_span(const std::vector<RationalVector>& basis, const RationalVector& v,
             int dim);

/// Smallest power with A^p = 0, or 0 when A is not nilpotent.
int nilpotency_index(const RationalMatrix& a);

}  // namespace quadobs
