#include "quadobs/burgers/solvers.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

#include "quadobs/burgers/product.h"
#include "quadobs/errors.h"

namespace quadobs::burgers {

LinearizedSolution::LinearizedSolution(ControlSignal u, double viscosity, int modes)
    : u_(std::move(u)),
      viscosity_(viscosity),
      modes_(modes),
      cells_(partition_signal(u_, 32)),
      q_(SineSpectrum::ConstantOne(modes)) {
  if (!(viscosity > 0.0) || modes < 1) {
    throw std::invalid_argument("LinearizedSolution: need viscosity > 0 and modes >= 1");
  }
}

double LinearizedSolution::duhamel(double lambda, double a, double b) const {
  if (b <= a) return 0.0;
  const auto& br = cells_.breaks;
  int i = static_cast<int>(std::upper_bound(br.begin(), br.end(), a) - br.begin()) - 1;
  i = std::clamp(i, 0, cells_.size() - 1);
  double total = 0.0;
  for (; i < cells_.size() && br[i] < b; ++i) {
    const double lo = std::max(a, br[i]);
    const double hi = std::min(b, br[i + 1]);
    const double h = hi - lo;
    if (h <= 0.0) continue;
    const LocalPolynomial p = poly_shift(cells_.cells[i], lo - br[i]);
    const auto moments = exp_moments(lambda * h, static_cast<int>(p.size()) - 1);
    double v = 0.0;
    double hk = 1.0;
    for (size_t k = 0; k < p.size(); ++k, hk *= h) v += p[k] * hk * moments[k];
    total += std::exp(-lambda * (b - hi)) * h * v;
  }
  return total;
}

SineSpectrum LinearizedSolution::at(double t) const {
  return advance(SineSpectrum::Zero(modes_), 0.0, t);
}

SineSpectrum LinearizedSolution::advance(const SineSpectrum& y0, double t0, double tau) const {
  SineSpectrum out = SineSpectrum::Zero(modes_);
  for (int m = 1; m <= modes_; ++m) {
    const double lambda = eigenvalue(m, viscosity_);
    double v = y0[m] * std::exp(-lambda * tau);
    if (q_[m] != 0.0) v += q_[m] * duhamel(lambda, t0, t0 + tau);
    out[m] = v;
  }
  return out;
}

LinearizedSolution linearized_solve(const ControlSignal& u, double viscosity, int modes) {
  return LinearizedSolution(u, viscosity, modes);
}

namespace {

using NodeValues =
    std::function<std::vector<SineSpectrum>(double t0, double h, const std::vector<double>& v)>;

std::vector<double> step_grid(double horizon, double max_step, const std::vector<double>& breaks) {
  const int n = std::max(1, static_cast<int>(std::ceil(horizon / max_step - 1e-12)));
  std::vector<double> grid;
  for (int i = 0; i <= n; ++i) grid.push_back(horizon * i / n);
  for (double b : breaks) {
    if (b > 0.0 && b < horizon) grid.push_back(b);
  }
  std::sort(grid.begin(), grid.end());
  std::vector<double> out;
  for (double g : grid) {
    if (out.empty() || g - out.back() > 1e-12 * std::max(1.0, horizon)) out.push_back(g);
  }
  out.back() = horizon;
  return out;
}

SecondOrderSolution collocation_solve(const NodeValues& y_nodes, int modes, double viscosity,
                                      double horizon, const std::vector<double>& breaks,
                                      const SecondOrderOptions& options) {
  if (!(viscosity > 0.0) || !(horizon > 0.0)) {
    throw std::invalid_argument("second_order_solve: need viscosity > 0 and horizon > 0");
  }
  const int p = options.degree;
  if (p < 1 || p > 12) throw std::invalid_argument("second_order_solve: degree outside 1..12");
  std::vector<double> v(p + 1);
  for (int r = 0; r <= p; ++r) v[r] = 0.5 * (1.0 - std::cos(std::numbers::pi * r / p));
  Eigen::MatrixXd vander(p + 1, p + 1);
  for (int r = 0; r <= p; ++r) {
    for (int k = 0; k <= p; ++k) vander(r, k) = std::pow(v[r], k);
  }
  const Eigen::MatrixXd vinv = vander.inverse();

  const QuadraticSource source(modes);
  const std::vector<double> grid = step_grid(horizon, options.max_step, breaks);
  SecondOrderSolution out;
  SineSpectrum z = SineSpectrum::Zero(modes);
  out.path.times.push_back(0.0);
  out.path.states.push_back(z);
  Eigen::MatrixXd samples(p + 1, modes);
  for (size_t n = 0; n + 1 < grid.size(); ++n) {
    const double t0 = grid[n];
    const double h = grid[n + 1] - t0;
    const std::vector<SineSpectrum> ys = y_nodes(t0, h, v);
    for (int r = 0; r <= p; ++r) {
      double tail = 0.0;
      const SineSpectrum s = source.apply(ys[r], &tail);
      out.tail_mass = std::max(out.tail_mass, tail);
      for (int m = 1; m <= modes; ++m) samples(r, m - 1) = s[m];
    }
    const Eigen::MatrixXd coeffs = vinv * samples;  // row k: v^k coefficient
    for (int m = 1; m <= modes; ++m) {
      const double mu = eigenvalue(m, viscosity) * h;
      const auto moments = exp_moments(mu, p);
      double integral = 0.0;
      for (int k = 0; k <= p; ++k) integral += coeffs(k, m - 1) * moments[k];
      z[m] = std::exp(-mu) * z[m] + h * integral;
    }
    out.path.times.push_back(grid[n + 1]);
    out.path.states.push_back(z);
  }
  return out;
}

}  // namespace

SecondOrderSolution second_order_solve(const LinearizedSolution& y,
                                       const SecondOrderOptions& options) {
  SineSpectrum y_start = SineSpectrum::Zero(y.modes());
  const NodeValues nodes = [&](double t0, double h, const std::vector<double>& v) {
    std::vector<SineSpectrum> ys;
    ys.reserve(v.size());
    for (double vr : v) ys.push_back(vr == 0.0 ? y_start : y.advance(y_start, t0, vr * h));
    y_start = ys.back();  // the last Lobatto node is the step end
    return ys;
  };
  return collocation_solve(nodes, y.modes(), y.viscosity(), y.horizon(), y.breaks(), options);
}

SecondOrderSolution second_order_solve(const std::function<SineSpectrum(double)>& y_at,
                                       int modes, double viscosity, double horizon,
                                       const std::vector<double>& breaks,
                                       const SecondOrderOptions& options) {
  const NodeValues nodes = [&](double t0, double h, const std::vector<double>& v) {
    std::vector<SineSpectrum> ys;
    for (double vr : v) {
      SineSpectrum s = y_at(t0 + vr * h);
      if (s.modes() != modes) throw std::invalid_argument("second_order_solve: mode count mismatch");
      ys.push_back(std::move(s));
    }
    return ys;
  };
  return collocation_solve(nodes, modes, viscosity, horizon, breaks, options);
}

namespace {

/// ETDRK4 weights for one step size, per mode.
struct EtdCoefficients {
  std::vector<double> e, e2, q, f1, f2, f3;
};

EtdCoefficients etd_coefficients(int modes, double viscosity, double h) {
  constexpr int kContour = 32;
  EtdCoefficients c;
  for (int m = 1; m <= modes; ++m) {
    const double z = -eigenvalue(m, viscosity) * h;
    c.e.push_back(std::exp(z));
    c.e2.push_back(std::exp(z / 2.0));
    std::complex<double> q = 0.0, f1 = 0.0, f2 = 0.0, f3 = 0.0;
    for (int j = 0; j < kContour; ++j) {
      const std::complex<double> r =
          z + std::exp(std::complex<double>(0.0, std::numbers::pi * (j + 0.5) / kContour));
      const std::complex<double> er = std::exp(r);
      const std::complex<double> r3 = r * r * r;
      q += (std::exp(r / 2.0) - 1.0) / r;
      f1 += (-4.0 - r + er * (4.0 - 3.0 * r + r * r)) / r3;
      f2 += (2.0 + r + er * (r - 2.0)) / r3;
      f3 += (-4.0 - 3.0 * r - r * r + er * (4.0 - r)) / r3;
    }
    // Upper half circle; the lower half is the conjugate, so the mean is real.
    c.q.push_back(h * q.real() / kContour);
    c.f1.push_back(h * f1.real() / kContour);
    c.f2.push_back(h * f2.real() / kContour);
    c.f3.push_back(h * f3.real() / kContour);
  }
  return c;
}

void require_finite(const SineSpectrum& s, double t) {
  for (double c : s.coeffs()) {
    if (!std::isfinite(c)) throw BlowUpError("burgers_solve: non-finite mode", t);
  }
}

}  // namespace

BurgersSolution burgers_solve(const SineSpectrum& psi0, const ControlSignal& u, double viscosity,
                              double dt, const BurgersOptions& options) {
  if (!(viscosity > 0.0) || !(dt > 0.0)) {
    throw std::invalid_argument("burgers_solve: need viscosity > 0 and dt > 0");
  }
  const int modes = psi0.modes();
  const double horizon = u.horizon();
  const int steps = std::max(1, static_cast<int>(std::ceil(horizon / dt - 1e-9)));
  const double h = horizon / steps;
  const QuadraticSource source(modes);
  const SineSpectrum q = SineSpectrum::ConstantOne(modes);
  const auto rhs = [&](const SineSpectrum& v, double t) { return source.apply(v) + q * u(t); };
  std::map<int, EtdCoefficients> cache;  // keyed by substep count

  BurgersSolution out;
  SineSpectrum v = psi0;
  require_finite(v, 0.0);
  out.path.times.push_back(0.0);
  out.path.states.push_back(v);
  for (int n = 0; n < steps; ++n) {
    const double t_start = n * h;
    double peak = 0.0;
    for (double g : source.grid_values(v)) peak = std::max(peak, std::abs(g));
    const double courant = h * peak * std::numbers::pi * modes;
    const int sub = std::max(1, static_cast<int>(std::ceil(courant / options.cfl)));
    if (sub > 1) {
      out.substeps += sub - 1;
      if (out.warnings.size() < 16) {
        std::ostringstream msg;
        msg << "CFL " << courant << " at t = " << t_start << ": step split into " << sub;
        out.warnings.push_back(msg.str());
      }
    }
    auto it = cache.find(sub);
    if (it == cache.end()) it = cache.emplace(sub, etd_coefficients(modes, viscosity, h / sub)).first;
    const EtdCoefficients& c = it->second;
    const double hs = h / sub;
    for (int s = 0; s < sub; ++s) {
      const double t = t_start + s * hs;
      const SineSpectrum nv = rhs(v, t);
      SineSpectrum a = SineSpectrum::Zero(modes);
      for (int m = 1; m <= modes; ++m) a[m] = c.e2[m - 1] * v[m] + c.q[m - 1] * nv[m];
      const SineSpectrum na = rhs(a, t + hs / 2.0);
      SineSpectrum b = SineSpectrum::Zero(modes);
      for (int m = 1; m <= modes; ++m) b[m] = c.e2[m - 1] * v[m] + c.q[m - 1] * na[m];
      const SineSpectrum nb = rhs(b, t + hs / 2.0);
      SineSpectrum cc = SineSpectrum::Zero(modes);
      for (int m = 1; m <= modes; ++m) {
        cc[m] = c.e2[m - 1] * a[m] + c.q[m - 1] * (2.0 * nb[m] - nv[m]);
      }
      const SineSpectrum nc = rhs(cc, t + hs);
      for (int m = 1; m <= modes; ++m) {
        v[m] = c.e[m - 1] * v[m] + c.f1[m - 1] * nv[m] + 2.0 * c.f2[m - 1] * (na[m] + nb[m]) +
               c.f3[m - 1] * nc[m];
      }
      require_finite(v, t + hs);
    }
    if ((n + 1) % std::max(1, options.sample_every) == 0 || n + 1 == steps) {
      out.path.times.push_back((n + 1) * h);
      out.path.states.push_back(v);
    }
  }
  return out;
}

namespace {

ScaledProblem rescale(const SpectralPath& psi, const ControlSignal& u, double time_factor,
                      double amplitude) {
  ScaledProblem out{SpectralPath{}, u.time_rescaled(time_factor).scaled(amplitude * amplitude)};
  for (size_t i = 0; i < psi.times.size(); ++i) {
    out.psi.times.push_back(psi.times[i] / time_factor);
    out.psi.states.push_back(psi.states[i] * amplitude);
  }
  return out;
}

}  // namespace

ScaledProblem to_normalized(const SpectralPath& psi_physical, const ControlSignal& u_physical,
                            double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("to_normalized: eps must be positive");
  return rescale(psi_physical, u_physical, eps, eps);
}

ScaledProblem to_physical(const SpectralPath& psi_normalized, const ControlSignal& u_normalized,
                          double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("to_physical: eps must be positive");
  return rescale(psi_normalized, u_normalized, 1.0 / eps, 1.0 / eps);
}

}  // namespace quadobs::burgers
