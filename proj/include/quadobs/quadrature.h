#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "quadobs/signal.h"

namespace quadobs {

/// Gauss-Legendre nodes and weights on [0, 1]. Supported n: 4, 6, 8, 10, 12,
/// 16, 20, 24, 32.
const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre_unit(int n);

/// A function on [breaks.front(), breaks.back()] as one polynomial per cell;
/// cell i is a polynomial in s - breaks[i].
struct CellPartition {
  std::vector<double> breaks;
  std::vector<LocalPolynomial> cells;

  int size() const { return static_cast<int>(cells.size()); }
  double width(int i) const { return breaks[i + 1] - breaks[i]; }
  double evaluate(double t) const;
};

/// Cells of U: knots of a piecewise polynomial are kept, every cell is split
/// until there are at least `min_cells`, and `extra_breaks` are merged in.
/// Trigonometric signals are replaced by degree-14 Chebyshev interpolants on
/// each cell.
CellPartition partition_signal(const ControlSignal& u, int min_cells,
                               std::span<const double> extra_breaks = {});

/// V(x) = U(a + b - x) on the same interval.
CellPartition reflect(const CellPartition& u);

using Kernel2D = std::function<double(double, double)>;

struct PairQuadrature {
  int q_far = 12;
  int q_near = 16;
};

/// int int k(s, t) U(s) U(t) ds dt over the partition square. k may be
/// singular (integrably) on the diagonal s = t, and at the origin corner
/// (s, t) = (a, a). Same-cell pairs use the map s = a + h w^2,
/// t = a + h w^2 (1 - z^2) on each triangle, pairs sharing one point use a
/// Duffy map with the radial variable squared, all other pairs tensor Gauss.
/// For |s - t|^{-1/2} and polynomial U the same-cell integrand becomes a
/// polynomial in (w, z).
double kernel_quadratic_form(const Kernel2D& k, const CellPartition& u,
                             const PairQuadrature& q = {});

/// int int |s - t|^{-1/2} U(s) U(t) over [0, 1]^2.
double frac_neg_quarter_norm_sq(const ControlSignal& u, int min_cells = 32);

/// int int |2 - s - t|^{-1/2} U(s) U(t) over [0, 1]^2.
double reflected_quarter_term(const ControlSignal& u, int min_cells = 32);

/// frac_neg_quarter_norm_sq of the primitive of u.
double h_minus_54_norm_sq(const ControlSignal& u, int min_cells = 32);

}  // namespace quadobs
