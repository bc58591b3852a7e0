#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "quadobs/ensemble.h"
#include "quadobs/obstruction.h"
#include "quadobs/signal.h"
#include "quadobs/vector_field.h"

namespace quadobs {

/// States sampled on a strictly increasing grid covering [0, T];
/// states[0] is the initial condition.
struct TrajectoryRecord {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> states;
  std::optional<ControlSignal> control;
  double step = 0.0;  // integrator step actually used

  const Eigen::VectorXd& final_state() const { return states.back(); }
};

using ControlFunction = std::function<double(double)>;

/// One classical RK4 step of x' = rhs(t, x).
template <class Rhs>
Eigen::VectorXd rk4_step(const Rhs& rhs, double t, const Eigen::VectorXd& x, double h) {
  const Eigen::VectorXd k1 = rhs(t, x);
  const Eigen::VectorXd k2 = rhs(t + 0.5 * h, x + 0.5 * h * k1);
  const Eigen::VectorXd k3 = rhs(t + 0.5 * h, x + 0.5 * h * k2);
  const Eigen::VectorXd k4 = rhs(t + h, x + h * k3);
  return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

/// RK4 for x' = f0(x) + u(t) f1(x) on a uniform grid of ceil(T/h) steps,
/// recording every `sample_every`-th state and the final one. Throws
/// BlowUpError on a non-finite state.
TrajectoryRecord integrate_affine(const CompiledField& f0, const CompiledField& f1,
                                  const ControlFunction& u, double horizon,
                                  const Eigen::VectorXd& x0, double h, int sample_every = 1);

TrajectoryRecord integrate_affine(const PolyVectorField& f0, const PolyVectorField& f1,
                                  const ControlSignal& u, const Eigen::VectorXd& x0,
                                  double h, int sample_every = 1);

/// G: S1(0) -> S1(0)^perp, quadratic with G(0) = 0 and G'(0) = 0. Coordinates
/// p = s1_frame^T x and q = perp_frame^T x use orthonormalized RREF bases.
struct QuadraticGraphFit {
  Eigen::MatrixXd s1_frame;
  Eigen::MatrixXd perp_frame;
  std::vector<std::pair<int, int>> monomials;  // p_i p_j, i <= j
  Eigen::MatrixXd coeffs;                      // rows: perp coordinates

  std::vector<double> amplitudes;
  /// RMS |q - G(p)| / RMS |p|^2 per amplitude.
  std::vector<double> normalized_residuals;
  /// Slope of log residual against log amplitude (+inf when all vanish).
  double decay_exponent = 0.0;
  bool graph_like = true;
  int samples = 0;

  /// The zero graph on the filtration's S1(0).
  static QuadraticGraphFit Zero(const BracketFiltration& filtration);

  Eigen::VectorXd graph(const Eigen::VectorXd& p) const;
  /// Coefficient of p_i p_j (i <= j) in perp coordinate r.
  double coefficient(int r, int i, int j) const;
  /// P_perp x - G(P x) as a vector of R^n.
  Eigen::VectorXd defect(const Eigen::VectorXd& x) const;
};

struct GraphFitOptions {
  EnsembleSpec ensemble;  // amplitude field is overridden by `amplitudes`
  std::vector<double> amplitudes{0.1, 0.05, 0.025};
  double step = 1e-3;
  int sample_every = 10;
  int depth = kDefaultBracketDepth;  // for the S2 in S1 verdict
  /// Fit even when S2(0) is not contained in S1(0).
  bool allow_drift_case = false;
};

/// Least-squares fit of P_perp x(t) against quadratic monomials in P x(t),
/// pooled over trajectories from 0, each amplitude group weighted by
/// 1/amplitude^2. Throws RankDeficiencyError when the regression is
/// rank-deficient and std::domain_error in the drift case unless allowed.
QuadraticGraphFit fit_invariant_graph(const PolyVectorField& f0, const PolyVectorField& f1,
                                      const GraphFitOptions& options);

struct ManifoldResidual {
  std::vector<double> times;
  std::vector<double> residual;
  double max_residual = 0.0;
  double w13_cubed = 0.0;  // ||u||^3 in W^{-1,3}
  double ratio = 0.0;      // max_residual / w13_cubed (0 when u = 0)
};

ManifoldResidual manifold_residual(const TrajectoryRecord& trajectory,
                                   const QuadraticGraphFit& fit);

struct DriftOptions {
  double step = 1e-3;
  int sample_every = 10;
  double tolerance = 1e-10;
};

struct DriftSample {
  int index = 0;
  double norm = 0.0;  // ||u|| in W^{2k-3,inf}
  bool w0 = false;    // u^{(j)}(0) = 0 for j <= 2k - 2
  double final_pairing = 0.0;
  double min_pairing = 0.0;  // over sample times
  double energy = 0.0;       // int u_k^2
  double ratio = 0.0;        // final_pairing / energy
  std::vector<double> pairing;
};

struct DriftReport {
  int k = 0;
  Eigen::VectorXd direction;
  std::vector<double> times;
  std::vector<DriftSample> samples;
  double min_final_pairing = 0.0;
  double min_pairing_w0 = 0.0;  // all-times minimum over W0 samples
  double min_ratio = 0.0;       // over samples with positive energy
  int violations = 0;
  double tolerance = 0.0;
};

/// Drift pairing <P_perp x(t) - G(P x(t)), d_k> along each control's
/// trajectory from 0. A sample violates when its final pairing, or for W0
/// controls any sampled pairing, is below -tolerance.
DriftReport drift_experiment(const PolyVectorField& f0, const PolyVectorField& f1,
                             const BracketFiltration& filtration,
                             const QuadraticGraphFit& fit,
                             const std::vector<ControlSignal>& controls,
                             const DriftOptions& options = {});

}  // namespace quadobs
