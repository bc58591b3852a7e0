#include "quadobs/rational_matrix.h"

#include <sstream>
#include <stdexcept>
#include <utility>

namespace quadobs {

RationalMatrix::RationalMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, 0) {
  if (rows < 0 || cols < 0) {
    throw std::invalid_argument("RationalMatrix: negative size");
  }
}

RationalMatrix RationalMatrix::Identity(int n) {
  RationalMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::FromColumns(
    const std::vector<RationalVector>& columns, int rows) {
  RationalMatrix m(rows, static_cast<int>(columns.size()));
  for (int c = 0; c < m.cols(); ++c) {
    if (static_cast<int>(columns[c].size()) != rows) {
      throw std::invalid_argument("FromColumns: column length mismatch");
    }
    for (int r = 0; r < rows; ++r) m(r, c) = columns[c][r];
  }
  return m;
}

RationalVector RationalMatrix::column(int c) const {
  RationalVector v(rows_);
  for (int r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

RationalMatrix RationalMatrix::operator+(const RationalMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw std::invalid_argument("RationalMatrix +: size mismatch");
  }
  RationalMatrix out(rows_, cols_);
  for (size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] + other.data_[i];
  return out;
}

RationalMatrix RationalMatrix::operator-(const RationalMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw std::invalid_argument("RationalMatrix -: size mismatch");
  }
  RationalMatrix out(rows_, cols_);
  for (size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] - other.data_[i];
  return out;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& other) const {
  if (cols_ != other.rows_) {
    throw std::invalid_argument("RationalMatrix *: size mismatch");
  }
  RationalMatrix out(rows_, other.cols_);
  for (int r = 0; r < rows_; ++r) {
    for (int k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(r, k);
      if (a == 0) continue;
      for (int c = 0; c < other.cols_; ++c) out(r, c) += a * other(k, c);
    }
  }
  return out;
}

RationalVector RationalMatrix::operator*(const RationalVector& v) const {
  if (static_cast<int>(v.size()) != cols_) {
    throw std::invalid_argument("RationalMatrix * vector: size mismatch");
  }
  RationalVector out(rows_, 0);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) out[r] += (*this)(r, c) * v[c];
  return out;
}

bool RationalMatrix::operator==(const RationalMatrix& other) const {
  return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
}

bool RationalMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (int r = 0; r < rows_; ++r)
    for (int c = r + 1; c < cols_; ++c)
      if ((*this)(r, c) != (*this)(c, r)) return false;
  return true;
}

bool RationalMatrix::is_zero() const {
  for (const auto& x : data_)
    if (x != 0) return false;
  return true;
}

Eigen::MatrixXd RationalMatrix::to_double() const {
  Eigen::MatrixXd m(rows_, cols_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) m(r, c) = (*this)(r, c).get_d();
  return m;
}

std::string RationalMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (int r = 0; r < rows_; ++r) {
    os << (r ? ", [" : "[");
    for (int c = 0; c < cols_; ++c) os << (c ? ", " : "") << (*this)(r, c);
    os << "]";
  }
  os << "]";
  return os.str();
}

RationalVector operator-(const RationalVector& v) {
  RationalVector out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = -v[i];
  return out;
}

RationalVector operator-(const RationalVector& a, const RationalVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector -: size mismatch");
  RationalVector out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

Rational dot(const RationalVector& a, const RationalVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  Rational s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool is_zero(const RationalVector& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

Eigen::VectorXd to_double(const RationalVector& v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  for (size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = v[i].get_d();
  return out;
}

std::string to_string(const RationalVector& v) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ")";
  return os.str();
}

int rank(const RationalMatrix& m) {
  const int rows = m.rows();
  const int cols = m.cols();
  if (rows == 0 || cols == 0) return 0;
  // Scale each row to integers.
  std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols));
  for (int r = 0; r < rows; ++r) {
    mpz_class denominator_lcm = 1;
    for (int c = 0; c < cols; ++c) {
      mpz_lcm(denominator_lcm.get_mpz_t(), denominator_lcm.get_mpz_t(),
              m(r, c).get_den_mpz_t());
    }
    for (int c = 0; c < cols; ++c) {
      a[r][c] = m(r, c).get_num() * (denominator_lcm / m(r, c).get_den());
    }
  }
  // Bareiss elimination with row pivoting; rank = number of pivots.
  mpz_class previous_pivot = 1;
  int pivot_row = 0;
  for (int c = 0; c < cols && pivot_row < rows; ++c) {
    int found = -1;
    for (int r = pivot_row; r < rows; ++r) {
      if (a[r][c] != 0) {
        found = r;
        break;
      }
    }
    if (found < 0) continue;
    std::swap(a[found], a[pivot_row]);
    for (int r = pivot_row + 1; r < rows; ++r) {
      for (int k = c + 1; k < cols; ++k) {
        a[r][k] = (a[pivot_row][c] * a[r][k] - a[r][c] * a[pivot_row][k]) /
                  previous_pivot;
      }
      a[r][c] = 0;
    }
    previous_pivot = a[pivot_row][c];
    ++pivot_row;
  }
  return pivot_row;
}

int rank_of(const std::vector<RationalVector>& vectors, int dim) {
  if (vectors.empty()) return 0;
  return rank(RationalMatrix::FromColumns(vectors, dim));
}

std::vector<RationalVector> independent_subset(
    const std::vector<RationalVector>& vectors, int dim) {
  std::vector<RationalVector> basis;
  for (const auto& v : vectors) {
    if (is_zero(v)) continue;
    basis.push_back(v);
    if (rank_of(basis, dim) < static_cast<int>(basis.size())) basis.pop_back();
    if (static_cast<int>(basis.size()) == dim) break;
  }
  return basis;
}

std::vector<RationalVector> rref_rows(const RationalMatrix& m) {
  const int rows = m.rows();
  const int cols = m.cols();
  std::vector<RationalVector> a(rows, RationalVector(cols));
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) a[r][c] = m(r, c);
  int pivot_row = 0;
  for (int c = 0; c < cols && pivot_row < rows; ++c) {
    int found = -1;
    for (int r = pivot_row; r < rows; ++r) {
      if (a[r][c] != 0) {
        found = r;
        break;
      }
    }
    if (found < 0) continue;
    std::swap(a[found], a[pivot_row]);
    const Rational pivot = a[pivot_row][c];
    for (int k = c; k < cols; ++k) a[pivot_row][k] /= pivot;
    for (int r = 0; r < rows; ++r) {
      if (r == pivot_row || a[r][c] == 0) continue;
      const Rational factor = a[r][c];
      for (int k = c; k < cols; ++k) a[r][k] -= factor * a[pivot_row][k];
    }
    ++pivot_row;
  }
  a.resize(pivot_row);
  return a;
}

RationalMatrix inverse(const RationalMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse: not square");
  const int n = m.rows();
  RationalMatrix a = m;
  RationalMatrix inv = RationalMatrix::Identity(n);
  for (int c = 0; c < n; ++c) {
    int found = -1;
    for (int r = c; r < n; ++r) {
      if (a(r, c) != 0) {
        found = r;
        break;
      }
    }
    if (found < 0) throw std::domain_error("inverse: singular matrix");
    if (found != c) {
      for (int k = 0; k < n; ++k) {
        std::swap(a(found, k), a(c, k));
        std::swap(inv(found, k), inv(c, k));
      }
    }
    const Rational pivot = a(c, c);
    for (int k = 0; k < n; ++k) {
      a(c, k) /= pivot;
      inv(c, k) /= pivot;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || a(r, c) == 0) continue;
      const Rational factor = a(r, c);
      for (int k = 0; k < n; ++k) {
        a(r, k) -= factor * a(c, k);
        inv(r, k) -= factor * inv(c, k);
      }
    }
  }
  return inv;
}

RationalMatrix orthogonal_projector(const std::vector<RationalVector>& basis,
                                    int dim) {
  if (basis.empty()) return RationalMatrix(dim, dim);
  const RationalMatrix b = RationalMatrix::FromColumns(basis, dim);
  const RationalMatrix bt = b.transpose();
  return b * inverse(bt * b) * bt;
}

bool in_span(const std::vector<RationalVector>& basis, const RationalVector& v,
             int dim) {
  if (is_zero(v)) return true;
  std::vector<RationalVector> extended = basis;
  extended.push_back(v);
  return rank_of(extended, dim) == rank_of(basis, dim);
}

int nilpotency_index(const RationalMatrix& a) {
  const int n = a.rows();
  RationalMatrix power = RationalMatrix::Identity(n);
  for (int p = 1; p <= n; ++p) {
    power = power * a;
    if (power.is_zero()) return p;
  }
  return 0;
}

}  // namespace quadobs
