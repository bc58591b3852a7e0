#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "quadobs/burgers/solvers.h"
#include "quadobs/burgers/spectrum.h"
#include "quadobs/quadrature.h"
#include "quadobs/signal.h"

namespace quadobs::burgers {

/// Pointwise second-order kernel
///   K(s1, s2) = 1/2 int_{max(s1,s2)}^1 int_0^1 Phi_x(1 - t) G(t - s1) G(t - s2) dx dt
/// with G the heat flow of 1 and Phi the heat flow of rho (viscosity eps).
/// In modes it is a finite sum over (m, j, l) with m = |j - l| or m = j + l;
/// the time integral of each term is a single exponential, done exactly.
class KernelEpsEvaluator {
 public:
  KernelEpsEvaluator(double eps, const SineSpectrum& rho, int modes);

  double eps() const { return eps_; }
  int modes() const { return modes_; }
  size_t term_count() const { return terms_.size(); }

  double operator()(double s1, double s2) const;
  /// d^2 K / ds1 ds2 for s1 != s2.
  double mixed_derivative(double s1, double s2) const;

 private:
  struct Term {
    double coeff;  // 1/2 rho_m (sqrt(2) m pi / 2) q_j q_l, signed
    double lm, lj, ll;
  };
  double eps_;
  int modes_;
  std::vector<Term> terms_;
};

/// (3/4)(|s - t|^{-1/2} + (2 - s - t)^{-1/2}): the mixed derivative of
/// K0(s, t) = |2 - s - t|^{3/2} - |s - t|^{3/2}.
double kernel_K0_value(double s1, double s2);
double kernel_K0_mixed(double s1, double s2);

enum class KernelKind { kEps, kLimit, kResidual, kGeneric };

/// Kernel samples on nodes i / (N - 1). The quadratic form uses the
/// pointwise evaluator when one is attached, else the bilinear interpolant.
struct KernelMatrix {
  KernelKind kind = KernelKind::kGeneric;
  std::string label;
  double eps = 0.0;
  std::vector<double> nodes;
  Eigen::MatrixXd values;
  Kernel2D evaluator;

  int size() const { return static_cast<int>(nodes.size()); }
  double symmetry_defect() const;
  void write_csv(std::ostream& out) const;
};

KernelMatrix kernel_matrix(KernelKind kind, std::string label, const Kernel2D& k, int nodes);
KernelMatrix kernel_K_eps(double eps, const SineSpectrum& rho, int nodes, int modes = 512);
KernelMatrix kernel_K0(int nodes);
/// K^eps - c sqrt(eps) K0 on the grid of `k_eps`; pointwise when k_eps is.
KernelMatrix kernel_residual(const KernelMatrix& k_eps, double c);

struct QuadFormOptions {
  enum class Route { kAuto, kEvaluator, kMatrix };
  Route route = Route::kAuto;
  int min_cells = 32;
  /// Relative tolerance of the K0 two-form agreement.
  double k0_tolerance = 1e-4;
};

/// int int k(s1, s2) u(s1) u(s2) over [0, 1]^2.
double quad_form(const KernelMatrix& k, const ControlSignal& u, const QuadFormOptions& options = {});

/// The K0 form by direct quadrature and after integrating by parts twice,
/// (3/4)(|U|^2_{H^{-1/4}} + reflected term) with U the primitive of u.
struct K0FormCheck {
  double direct = 0.0;
  double by_parts = 0.0;
  double relative_gap = 0.0;
};
K0FormCheck k0_form_check(const ControlSignal& u, int min_cells = 32);

/// b_i = int phi_i u for the hat basis on `nodes`, exact for the cell
/// polynomials of u.
Eigen::VectorXd hat_moments(const std::vector<double>& nodes, const ControlSignal& u);

/// sqrt(2) sin(2 pi x), negated when the form on u = 1 is negative.
struct RhoCalibration {
  SineSpectrum rho;
  double probe_form = 0.0;  // before any flip
  bool flipped = false;
};
RhoCalibration calibrate_rho(double eps, int modes);

struct CoercivityOptions {
  std::vector<double> eps_list = {1e-2, 1e-3, 1e-4};
  std::vector<std::pair<double, double>> probes = {
      {0.2, 0.7}, {0.1, 0.5}, {0.3, 0.6}, {0.0, 0.4}, {0.4, 0.8}};
  int pointwise_modes = 4096;
  int matrix_nodes = 257;
  int matrix_modes = 512;
};

struct CoercivityRow {
  double eps = 0.0;
  std::vector<double> probe_ratios;  // K^eps / (sqrt(eps) K0) per probe
  double probe_mean = 0.0;
  double probe_spread = 0.0;  // (max - min) / |mean|
  std::vector<double> ratios;  // <K^eps u, u> / (sqrt(eps) |u|^2_{H^{-5/4}})
  double min_ratio = 0.0;
};

struct CoercivityReport {
  std::vector<CoercivityRow> rows;
  /// Probe mean at the smallest eps: the measured proportionality constant.
  double constant = 0.0;
};

CoercivityReport coercivity_study(const SineSpectrum& rho, const std::vector<ControlSignal>& controls,
                                  const CoercivityOptions& options = {});

struct WsioOptions {
  double delta = 1.0;
  int samples = 10000;
  uint64_t seed = 1;
  /// Pairs closer than this are not sampled (kernels resolved only off it).
  double min_separation = 1e-4;
  /// Growth of the per-band kappa toward the diagonal above which the
  /// kernel is declared not weakly singular.
  double band_growth_limit = 10.0;
};

struct WsioReport {
  double kappa1 = 0.0, kappa2 = 0.0, kappa3 = 0.0, kappa = 0.0;
  std::vector<double> band_edges;  // decreasing separations
  std::vector<double> band_kappa;
  bool weakly_singular = false;
  std::string verdict;
  /// Per ensemble: max |<L U, U>| / (kappa |U|^2_{H^{-1/4}}).
  std::vector<double> ensemble_constants;
  double empirical_constant = 0.0;
  double constant_spread = 0.0;  // (max - min) / max over ensembles
};

/// <L U, U> for one U; defaults to quadrature of L itself.
using FormFn = std::function<double(const ControlSignal&)>;

WsioReport wsio_bound(const Kernel2D& l, const std::vector<std::vector<ControlSignal>>& ensembles,
                      const WsioOptions& options = {}, const FormFn& form = {});

struct DriftDemoOptions {
  int modes = 256;
  double dt = 1e-3;
};

struct DriftDemoReport {
  std::vector<double> projections;  // int psi(1) rho
  double positive_fraction = 0.0;
  double negative_fraction = 0.0;
  double consistent_fraction = 0.0;
  double min_projection = 0.0;
  double max_projection = 0.0;
  int cfl_substeps = 0;
};

/// Runs Burgers (viscosity eps, horizon 1) from psi0 for each control and
/// projects the final state on rho.
DriftDemoReport drift_demo(const SineSpectrum& rho, double eps, const std::vector<ControlSignal>& controls,
                           const SineSpectrum& psi0, const DriftDemoOptions& options = {});

/// delta * s * x (1 - x)(1 - 2x) with s = +-1 making its rho-projection positive.
SineSpectrum sign_aligned_initial(const SineSpectrum& rho, double delta);

}  // namespace quadobs::burgers
