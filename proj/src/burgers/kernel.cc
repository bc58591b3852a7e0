#include "quadobs/burgers/kernel.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <ostream>
#include <random>
#include <stdexcept>

#include "quadobs/errors.h"

namespace quadobs::burgers {

namespace {

/// int_0^L e^{-x v / L} dv / L with x = |beta| L, stable at x -> 0.
double phi1(double x) { return x < 1e-12 ? 1.0 - 0.5 * x : -std::expm1(-x) / x; }

SineSpectrum resized(const SineSpectrum& s, int modes) {
  std::vector<double> c(modes, 0.0);
  for (int m = 1; m <= std::min(modes, s.modes()); ++m) c[m - 1] = s[m];
  return SineSpectrum(std::move(c));
}

}  // namespace

KernelEpsEvaluator::KernelEpsEvaluator(double eps, const SineSpectrum& rho, int modes)
    : eps_(eps), modes_(modes) {
  if (!(eps > 0.0) || modes < 1) throw std::invalid_argument("KernelEpsEvaluator: need eps > 0, modes >= 1");
  const SineSpectrum q = SineSpectrum::ConstantOne(modes);
  for (int m = 1; m <= std::min(modes, rho.modes()); ++m) {
    if (rho[m] == 0.0) continue;
    const double base = 0.5 * rho[m] * std::numbers::sqrt2 * m * std::numbers::pi / 2.0;
    // Odd j, l only (q vanishes on even modes), so only even m survive.
    for (int j = 1; j <= modes; j += 2) {
      for (int l : {j + m, j - m, m - j}) {
        if (l < 1 || l > modes || q[l] == 0.0) continue;
        const double sign = (l == m - j) ? -1.0 : 1.0;
        terms_.push_back({sign * base * q[j] * q[l], eigenvalue(m, eps), eigenvalue(j, eps),
                          eigenvalue(l, eps)});
      }
    }
  }
}

double KernelEpsEvaluator::operator()(double s1, double s2) const {
  const double a = std::max(s1, s2);
  const double len = 1.0 - a;
  if (len <= 0.0) return 0.0;
  double sum = 0.0;
  for (const Term& t : terms_) {
    const double f_end = -t.lj * (1.0 - s1) - t.ll * (1.0 - s2);
    const double f_start = -t.lm * len - t.lj * (a - s1) - t.ll * (a - s2);
    const double beta = t.lm - t.lj - t.ll;
    sum += t.coeff * len * std::exp(std::max(f_end, f_start)) * phi1(std::abs(beta) * len);
  }
  return sum;
}

double KernelEpsEvaluator::mixed_derivative(double s1, double s2) const {
  if (s1 == s2) throw std::domain_error("KernelEpsEvaluator: mixed derivative is singular on the diagonal");
  const double a = std::max(s1, s2);
  const double len = 1.0 - a;
  if (len <= 0.0) return 0.0;
  double sum = 0.0;
  for (const Term& t : terms_) {
    const double f_end = -t.lj * (1.0 - s1) - t.ll * (1.0 - s2);
    const double f_start = -t.lm * len - t.lj * (a - s1) - t.ll * (a - s2);
    const double beta = t.lm - t.lj - t.ll;
    const double e = len * std::exp(std::max(f_end, f_start)) * phi1(std::abs(beta) * len);
    // The earlier variable differentiates the integrand; the later one
    // also moves the lower limit of the time integral.
    const double early = s1 < s2 ? t.lj : t.ll;
    const double late = s1 < s2 ? t.ll : t.lj;
    sum += t.coeff * early * (late * e - std::exp(f_start));
  }
  return sum;
}

double kernel_K0_value(double s1, double s2) {
  return std::pow(std::abs(2.0 - s1 - s2), 1.5) - std::pow(std::abs(s1 - s2), 1.5);
}

double kernel_K0_mixed(double s1, double s2) {
  return 0.75 * (1.0 / std::sqrt(std::abs(s1 - s2)) + 1.0 / std::sqrt(std::abs(2.0 - s1 - s2)));
}

double KernelMatrix::symmetry_defect() const {
  return values.size() == 0 ? 0.0 : (values - values.transpose()).cwiseAbs().maxCoeff();
}

void KernelMatrix::write_csv(std::ostream& out) const {
  out << "s1,s2,value\n";
  out.precision(17);
  for (int i = 0; i < size(); ++i) {
    for (int j = 0; j < size(); ++j) out << nodes[i] << ',' << nodes[j] << ',' << values(i, j) << '\n';
  }
}

KernelMatrix kernel_matrix(KernelKind kind, std::string label, const Kernel2D& k, int nodes) {
  if (nodes < 2) throw std::invalid_argument("kernel_matrix: need at least two nodes");
  KernelMatrix out;
  out.kind = kind;
  out.label = std::move(label);
  out.evaluator = k;
  for (int i = 0; i < nodes; ++i) out.nodes.push_back(static_cast<double>(i) / (nodes - 1));
  out.values.resize(nodes, nodes);
  for (int i = 0; i < nodes; ++i) {
    for (int j = i; j < nodes; ++j) {
      out.values(i, j) = k(out.nodes[i], out.nodes[j]);
      out.values(j, i) = out.values(i, j);
    }
  }
  return out;
}

KernelMatrix kernel_K_eps(double eps, const SineSpectrum& rho, int nodes, int modes) {
  const auto eval = std::make_shared<KernelEpsEvaluator>(eps, rho, modes);
  KernelMatrix k = kernel_matrix(KernelKind::kEps, "K_eps", [eval](double a, double b) { return (*eval)(a, b); },
                                 nodes);
  k.eps = eps;
  return k;
}

KernelMatrix kernel_K0(int nodes) {
  return kernel_matrix(KernelKind::kLimit, "K0", kernel_K0_value, nodes);
}

KernelMatrix kernel_residual(const KernelMatrix& k_eps, double c) {
  KernelMatrix r = k_eps;
  r.kind = KernelKind::kResidual;
  r.label = "R_eps";
  const double w = c * std::sqrt(k_eps.eps);
  for (int i = 0; i < r.size(); ++i) {
    for (int j = 0; j < r.size(); ++j) r.values(i, j) -= w * kernel_K0_value(r.nodes[i], r.nodes[j]);
  }
  if (k_eps.evaluator) {
    const Kernel2D base = k_eps.evaluator;
    r.evaluator = [base, w](double a, double b) { return base(a, b) - w * kernel_K0_value(a, b); };
  }
  return r;
}

Eigen::VectorXd hat_moments(const std::vector<double>& nodes, const ControlSignal& u) {
  const int n = static_cast<int>(nodes.size());
  const CellPartition cells =
      partition_signal(u, 1, std::span<const double>(nodes.data() + 1, std::max(0, n - 2)));
  const auto& [x, w] = gauss_legendre_unit(16);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  for (int c = 0; c < cells.size(); ++c) {
    const double lo = cells.breaks[c];
    const double h = cells.width(c);
    const double mid = lo + 0.5 * h;
    int i = static_cast<int>(std::upper_bound(nodes.begin(), nodes.end(), mid) - nodes.begin()) - 1;
    i = std::clamp(i, 0, n - 2);
    const double gap = nodes[i + 1] - nodes[i];
    for (size_t q = 0; q < x.size(); ++q) {
      const double s = lo + h * x[q];
      const double v = w[q] * h * horner(cells.cells[c], s - lo);
      b(i) += v * (nodes[i + 1] - s) / gap;
      b(i + 1) += v * (s - nodes[i]) / gap;
    }
  }
  return b;
}

K0FormCheck k0_form_check(const ControlSignal& u, int min_cells) {
  K0FormCheck check;
  check.direct = kernel_quadratic_form(kernel_K0_value, partition_signal(u, min_cells));
  const ControlSignal big_u = u.primitive();
  check.by_parts =
      0.75 * (frac_neg_quarter_norm_sq(big_u, min_cells) + reflected_quarter_term(big_u, min_cells));
  const double scale = std::max(std::abs(check.direct), std::abs(check.by_parts));
  check.relative_gap = scale > 0.0 ? std::abs(check.direct - check.by_parts) / scale : 0.0;
  return check;
}

double quad_form(const KernelMatrix& k, const ControlSignal& u, const QuadFormOptions& options) {
  if (std::abs(u.horizon() - 1.0) > 1e-12) throw std::invalid_argument("quad_form: control must live on [0, 1]");
  if (k.kind == KernelKind::kLimit) {
    const K0FormCheck check = k0_form_check(u, options.min_cells);
    if (check.relative_gap > options.k0_tolerance) {
      throw NumericalIntegrityError("quad_form: K0 direct form " + std::to_string(check.direct) +
                                    " and integrated-by-parts form " + std::to_string(check.by_parts) +
                                    " disagree");
    }
    return check.direct;
  }
  using Route = QuadFormOptions::Route;
  const bool pointwise = options.route == Route::kEvaluator ||
                         (options.route == Route::kAuto && static_cast<bool>(k.evaluator));
  if (pointwise) {
    if (!k.evaluator) throw std::invalid_argument("quad_form: kernel has no pointwise evaluator");
    return kernel_quadratic_form(k.evaluator, partition_signal(u, options.min_cells));
  }
  const Eigen::VectorXd b = hat_moments(k.nodes, u);
  return b.dot(k.values * b);
}

RhoCalibration calibrate_rho(double eps, int modes) {
  RhoCalibration out{SineSpectrum::Mode(modes, 2, 1.0)};
  const KernelEpsEvaluator k(eps, out.rho, modes);
  const ControlSignal probe = ControlSignal::Constant(1.0, 1.0);
  out.probe_form = kernel_quadratic_form([&k](double a, double b) { return k(a, b); }, partition_signal(probe, 16));
  if (out.probe_form < 0.0) {
    out.rho = out.rho * -1.0;
    out.flipped = true;
  }
  return out;
}

CoercivityReport coercivity_study(const SineSpectrum& rho, const std::vector<ControlSignal>& controls,
                                  const CoercivityOptions& options) {
  CoercivityReport report;
  for (double eps : options.eps_list) {
    CoercivityRow row;
    row.eps = eps;
    const KernelEpsEvaluator pointwise(eps, rho, options.pointwise_modes);
    for (const auto& [s1, s2] : options.probes) {
      row.probe_ratios.push_back(pointwise(s1, s2) / (std::sqrt(eps) * kernel_K0_value(s1, s2)));
    }
    if (!row.probe_ratios.empty()) {
      const auto [lo, hi] = std::minmax_element(row.probe_ratios.begin(), row.probe_ratios.end());
      for (double r : row.probe_ratios) row.probe_mean += r / row.probe_ratios.size();
      row.probe_spread = (*hi - *lo) / std::abs(row.probe_mean);
    }
    if (!controls.empty()) {
      const KernelMatrix k = kernel_K_eps(eps, rho, options.matrix_nodes, options.matrix_modes);
      QuadFormOptions matrix_route;
      matrix_route.route = QuadFormOptions::Route::kMatrix;
      row.min_ratio = std::numeric_limits<double>::infinity();
      for (const auto& u : controls) {
        const double r = quad_form(k, u, matrix_route) / (std::sqrt(eps) * h_minus_54_norm_sq(u));
        row.ratios.push_back(r);
        row.min_ratio = std::min(row.min_ratio, r);
      }
    }
    report.rows.push_back(std::move(row));
  }
  if (!report.rows.empty()) {
    const auto smallest = std::min_element(report.rows.begin(), report.rows.end(),
                                           [](const auto& a, const auto& b) { return a.eps < b.eps; });
    report.constant = smallest->probe_mean;
  }
  return report;
}

WsioReport wsio_bound(const Kernel2D& l, const std::vector<std::vector<ControlSignal>>& ensembles,
                      const WsioOptions& options, const FormFn& form) {
  if (!(options.delta > 0.5 && options.delta <= 1.0)) {
    throw std::invalid_argument("wsio_bound: delta must lie in (1/2, 1]");
  }
  if (!(options.min_separation > 0.0 && options.min_separation < 1.0)) {
    throw std::invalid_argument("wsio_bound: min_separation must lie in (0, 1)");
  }
  WsioReport report;
  for (double e = 1.0; e > options.min_separation * 1.000001; e /= 10.0) report.band_edges.push_back(e);
  report.band_edges.push_back(options.min_separation);
  const int bands = static_cast<int>(report.band_edges.size()) - 1;
  report.band_kappa.assign(bands, 0.0);

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double log_lo = std::log(options.min_separation);
  const double d_exp = options.delta;
  bool finite = true;
  for (int n = 0; n < options.samples; ++n) {
    const double d = std::exp(log_lo * (1.0 - unit(rng))) * (1.0 - 1e-12);
    double t = unit(rng) * (1.0 - d);
    double s = t + d;
    if (unit(rng) < 0.5) std::swap(t, s);
    const double scale = std::pow(d, -0.5 - d_exp);
    double t2 = -1.0, s2 = -1.0;
    while (!(t2 > 0.0 && t2 < 1.0)) t2 = t + 0.5 * d * (2.0 * unit(rng) - 1.0);
    while (!(s2 > 0.0 && s2 < 1.0)) s2 = s + 0.5 * d * (2.0 * unit(rng) - 1.0);
    const double lts = l(t, s);
    const double k1 = std::abs(lts) * std::sqrt(d);
    const double k2 = t2 == t ? 0.0 : std::abs(lts - l(t2, s)) / (std::pow(std::abs(t - t2), d_exp) * scale);
    const double k3 = s2 == s ? 0.0 : std::abs(lts - l(t, s2)) / (std::pow(std::abs(s - s2), d_exp) * scale);
    if (!std::isfinite(k1) || !std::isfinite(k2) || !std::isfinite(k3)) {
      finite = false;
      continue;
    }
    report.kappa1 = std::max(report.kappa1, k1);
    report.kappa2 = std::max(report.kappa2, k2);
    report.kappa3 = std::max(report.kappa3, k3);
    int b = 0;
    while (b + 1 < bands && d < report.band_edges[b + 1]) ++b;
    report.band_kappa[b] = std::max(report.band_kappa[b], std::max({k1, k2, k3}));
  }
  report.kappa = std::max({report.kappa1, report.kappa2, report.kappa3});
  double growth = 0.0;
  for (double k : report.band_kappa) {
    if (k > 0.0) growth = std::max(growth, k / std::max(report.band_kappa.front(), 1e-300));
  }
  report.weakly_singular = finite && report.kappa > 0.0 && growth <= options.band_growth_limit;
  if (!finite) {
    report.verdict = "not weakly singular at delta: non-finite samples";
  } else if (report.kappa == 0.0) {
    report.verdict = "zero kernel on samples";
  } else if (!report.weakly_singular) {
    report.verdict = "not weakly singular at delta: kappa grows toward the diagonal";
  } else {
    report.verdict = "weakly singular on samples";
  }

  if (report.kappa > 0.0) {
    const FormFn lu = form ? form : [&l](const ControlSignal& u) {
      return kernel_quadratic_form(l, partition_signal(u, 32));
    };
    for (const auto& ensemble : ensembles) {
      double worst = 0.0;
      for (const auto& u : ensemble) {
        const double norm = frac_neg_quarter_norm_sq(u);
        if (norm > 0.0) worst = std::max(worst, std::abs(lu(u)) / (report.kappa * norm));
      }
      report.ensemble_constants.push_back(worst);
    }
    if (!report.ensemble_constants.empty()) {
      const auto [lo, hi] =
          std::minmax_element(report.ensemble_constants.begin(), report.ensemble_constants.end());
      report.empirical_constant = *hi;
      report.constant_spread = *hi > 0.0 ? (*hi - *lo) / *hi : 0.0;
    }
  }
  return report;
}

DriftDemoReport drift_demo(const SineSpectrum& rho, double eps, const std::vector<ControlSignal>& controls,
                           const SineSpectrum& psi0, const DriftDemoOptions& options) {
  DriftDemoReport report;
  const SineSpectrum r = resized(rho, options.modes);
  const SineSpectrum start = resized(psi0, options.modes);
  for (const auto& u : controls) {
    const BurgersSolution sol = burgers_solve(start, u, eps, options.dt);
    report.cfl_substeps += sol.substeps;
    report.projections.push_back(sol.path.final_state().inner(r));
  }
  if (report.projections.empty()) return report;
  int pos = 0, neg = 0;
  for (double p : report.projections) {
    pos += p > 0.0;
    neg += p < 0.0;
  }
  const double n = static_cast<double>(report.projections.size());
  report.positive_fraction = pos / n;
  report.negative_fraction = neg / n;
  report.consistent_fraction = std::max(pos, neg) / n;
  const auto [lo, hi] = std::minmax_element(report.projections.begin(), report.projections.end());
  report.min_projection = *lo;
  report.max_projection = *hi;
  return report;
}

SineSpectrum sign_aligned_initial(const SineSpectrum& rho, double delta) {
  const SineSpectrum shape = SineSpectrum::FromPolynomial({0.0, 1.0, -3.0, 2.0}, rho.modes());
  const double sign = shape.inner(rho) < 0.0 ? -1.0 : 1.0;
  return shape * (sign * delta);
}

}  // namespace quadobs::burgers
