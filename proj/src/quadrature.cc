#include "quadobs/quadrature.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>

namespace quadobs {

namespace {

template <int N>
std::pair<std::vector<double>, std::vector<double>> unit_rule() {
  using Rule = boost::math::quadrature::gauss<double, N>;
  const auto& x = Rule::abscissa();
  const auto& w = Rule::weights();
  std::vector<double> nodes;
  std::vector<double> weights;
  // Boost stores the non-negative half; abscissa()[0] == 0 for odd N.
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0) {
      nodes.push_back(0.5);
      weights.push_back(0.5 * w[i]);
      continue;
    }
    nodes.push_back(0.5 * (1.0 - x[i]));
    weights.push_back(0.5 * w[i]);
    nodes.push_back(0.5 * (1.0 + x[i]));
    weights.push_back(0.5 * w[i]);
  }
  return {nodes, weights};
}

constexpr double kBreakTolerance = 1e-13;

std::vector<double> merge_breaks(std::vector<double> breaks, std::span<const double> extra) {
  const double lo = breaks.front();
  const double hi = breaks.back();
  for (double b : extra)
    if (b > lo && b < hi) breaks.push_back(b);
  std::sort(breaks.begin(), breaks.end());
  std::vector<double> out;
  for (double b : breaks)
    if (out.empty() || b - out.back() > kBreakTolerance * (hi - lo)) out.push_back(b);
  out.back() = hi;
  return out;
}

}  // namespace

const std::pair<std::vector<double>, std::vector<double>>& gauss_legendre_unit(int n) {
  static const std::map<int, std::pair<std::vector<double>, std::vector<double>>> rules = {
      {4, unit_rule<4>()},   {6, unit_rule<6>()},   {8, unit_rule<8>()},
      {10, unit_rule<10>()}, {12, unit_rule<12>()}, {16, unit_rule<16>()},
      {20, unit_rule<20>()}, {24, unit_rule<24>()}, {32, unit_rule<32>()},
  };
  const auto it = rules.find(n);
  if (it == rules.end()) throw std::invalid_argument("gauss_legendre_unit: unsupported order");
  return it->second;
}

double CellPartition::evaluate(double t) const {
  auto it = std::upper_bound(breaks.begin(), breaks.end(), t);
  int i = static_cast<int>(it - breaks.begin()) - 1;
  i = std::clamp(i, 0, size() - 1);
  return horner(cells[i], t - breaks[i]);
}

CellPartition partition_signal(const ControlSignal& u, int min_cells,
                               std::span<const double> extra_breaks) {
  if (min_cells < 1) throw std::invalid_argument("partition_signal: min_cells must be >= 1");
  const double horizon = u.horizon();
  std::vector<double> base;
  if (u.is_piecewise_polynomial()) {
    const auto& pp = u.piecewise();
    const int factor = (min_cells + pp.num_cells() - 1) / pp.num_cells();
    const int n = pp.num_cells() * factor;
    for (int i = 0; i <= n; ++i) base.push_back(horizon * i / n);
  } else {
    for (int i = 0; i <= min_cells; ++i) base.push_back(horizon * i / min_cells);
  }
  CellPartition out;
  out.breaks = merge_breaks(std::move(base), extra_breaks);
  for (size_t i = 0; i + 1 < out.breaks.size(); ++i) {
    const double a = out.breaks[i];
    const double b = out.breaks[i + 1];
    if (u.is_piecewise_polynomial()) {
      const auto& pp = u.piecewise();
      const int c = pp.locate(0.5 * (a + b));
      out.cells.push_back(poly_shift(pp.cell(c), a - pp.cell_start(c)));
    } else {
      out.cells.push_back(u.local_polynomial(a, b - a, 14));
    }
  }
  return out;
}

CellPartition reflect(const CellPartition& u) {
  CellPartition out;
  const double lo = u.breaks.front();
  const double hi = u.breaks.back();
  for (auto it = u.breaks.rbegin(); it != u.breaks.rend(); ++it) out.breaks.push_back(lo + hi - *it);
  out.breaks.front() = lo;
  out.breaks.back() = hi;
  for (int i = u.size() - 1; i >= 0; --i) {
    // q(s) = p(h - s)
    LocalPolynomial q = poly_shift(u.cells[i], u.width(i));
    for (size_t k = 1; k < q.size(); k += 2) q[k] = -q[k];
    out.cells.push_back(std::move(q));
  }
  return out;
}

double kernel_quadratic_form(const Kernel2D& k, const CellPartition& u, const PairQuadrature& q) {
  const auto& far = gauss_legendre_unit(q.q_far);
  const auto& near = gauss_legendre_unit(q.q_near);
  const int n = u.size();

  // U at far-rule nodes, per cell.
  std::vector<std::vector<double>> far_values(n);
  std::vector<std::vector<double>> far_points(n);
  for (int i = 0; i < n; ++i) {
    for (double x : far.first) {
      far_points[i].push_back(u.breaks[i] + x * u.width(i));
      far_values[i].push_back(horner(u.cells[i], x * u.width(i)));
    }
  }

  auto same_cell = [&](int i) {
    const double a = u.breaks[i];
    const double h = u.width(i);
    double sum = 0.0;
    for (size_t p = 0; p < near.first.size(); ++p) {
      const double w = near.first[p];
      for (size_t r = 0; r < near.first.size(); ++r) {
        const double z = near.first[r];
        const double ds = h * w * w;
        const double dt = h * w * w * (1.0 - z * z);
        const double jac = 4.0 * h * h * w * w * w * z * near.second[p] * near.second[r];
        // Triangle t < s, then its mirror s < t.
        sum += jac * (k(a + ds, a + dt) * horner(u.cells[i], ds) * horner(u.cells[i], dt) +
                      k(a + dt, a + ds) * horner(u.cells[i], dt) * horner(u.cells[i], ds));
      }
    }
    return sum;
  };

  // s in cell j = [c, c + hj], t in cell i = [c - hi, c]; sigma = s - c, tau = c - t.
  auto corner_pair = [&](const Kernel2D& kern, int i, int j) {
    const double c = u.breaks[j];
    const double hi = u.width(i);
    const double hj = u.width(j);
    double sum = 0.0;
    for (size_t p = 0; p < near.first.size(); ++p) {
      const double w = near.first[p];
      const double a = w * w;
      for (size_t r = 0; r < near.first.size(); ++r) {
        const double b = near.first[r];
        const double jac = 2.0 * hi * hj * w * w * w * near.second[p] * near.second[r];
        {
          const double sigma = hj * a;
          const double tau = hi * a * b;
          sum += jac * kern(c + sigma, c - tau) * horner(u.cells[j], sigma) *
                 horner(u.cells[i], hi - tau);
        }
        {
          const double tau = hi * a;
          const double sigma = hj * a * b;
          sum += jac * kern(c + sigma, c - tau) * horner(u.cells[j], sigma) *
                 horner(u.cells[i], hi - tau);
        }
      }
    }
    return sum;
  };

  auto tensor_pair = [&](int i, int j) {
    double sum = 0.0;
    const double scale = u.width(i) * u.width(j);
    for (size_t p = 0; p < far.first.size(); ++p) {
      double inner = 0.0;
      for (size_t r = 0; r < far.first.size(); ++r) {
        inner += far.second[r] * k(far_points[i][p], far_points[j][r]) * far_values[j][r];
      }
      sum += far.second[p] * far_values[i][p] * inner;
    }
    return scale * sum;
  };

  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    total += same_cell(i);
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      if (j == i + 1) {
        // (s in j, t in i), then the transposed pair through k(t, s).
        total += corner_pair(k, i, j);
        total += corner_pair([&k](double s, double t) { return k(t, s); }, i, j);
      } else if (j != i - 1) {
        total += tensor_pair(i, j);
      }
    }
  }
  return total;
}

namespace {

void require_unit_horizon(const ControlSignal& u, const char* where) {
  if (std::abs(u.horizon() - 1.0) > 1e-12) {
    throw std::invalid_argument(std::string(where) + ": signal must live on [0, 1]");
  }
}

}  // namespace

double frac_neg_quarter_norm_sq(const ControlSignal& u, int min_cells) {
  require_unit_horizon(u, "frac_neg_quarter_norm_sq");
  const CellPartition cells = partition_signal(u, min_cells);
  return kernel_quadratic_form(
      [](double s, double t) { return 1.0 / std::sqrt(std::abs(s - t)); }, cells);
}

double reflected_quarter_term(const ControlSignal& u, int min_cells) {
  require_unit_horizon(u, "reflected_quarter_term");
  // |2 - s - t| = s' + t' with s' = 1 - s: singular only at the origin corner.
  const CellPartition cells = reflect(partition_signal(u, min_cells));
  return kernel_quadratic_form([](double s, double t) { return 1.0 / std::sqrt(s + t); }, cells);
}

double h_minus_54_norm_sq(const ControlSignal& u, int min_cells) {
  return frac_neg_quarter_norm_sq(u.primitive(), min_cells);
}

}  // namespace quadobs
