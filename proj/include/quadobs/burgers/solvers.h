#pragma once

#include <functional>
#include <string>
#include <vector>

#include "quadobs/burgers/spectrum.h"
#include "quadobs/quadrature.h"
#include "quadobs/signal.h"

namespace quadobs::burgers {

/// y_t - nu y_xx = u(t), y(0) = 0, Dirichlet. In modes:
/// y_m(t) = q_m int_0^t exp(-lambda_m (t - s)) u(s) ds, q the expansion of 1.
class LinearizedSolution {
 public:
  LinearizedSolution(ControlSignal u, double viscosity, int modes);

  const ControlSignal& control() const { return u_; }
  double viscosity() const { return viscosity_; }
  int modes() const { return modes_; }
  double horizon() const { return u_.horizon(); }
  /// Breakpoints of the control representation used for exact integration.
  const std::vector<double>& breaks() const { return cells_.breaks; }

  /// int_a^b exp(-lambda (b - s)) u(s) ds, exact for the cell polynomials.
  double duhamel(double lambda, double a, double b) const;
  /// y(t).
  SineSpectrum at(double t) const;
  /// y(t0 + tau) from y(t0).
  SineSpectrum advance(const SineSpectrum& y0, double t0, double tau) const;

 private:
  ControlSignal u_;
  double viscosity_;
  int modes_;
  CellPartition cells_;
  SineSpectrum q_;
};

LinearizedSolution linearized_solve(const ControlSignal& u, double viscosity, int modes);

struct SecondOrderOptions {
  double max_step = 1.0 / 256.0;  // steps also break at control knots
  int degree = 6;                  // Chebyshev-Lobatto collocation degree
};

struct SecondOrderSolution {
  SpectralPath path;
  /// Largest relative mass of the source in modes M+1..2M-1 over all nodes.
  double tail_mass = 0.0;
};

/// z_t - nu z_xx = -y y_x, z(0) = 0. On each step the source is
/// interpolated at Chebyshev-Lobatto nodes (y exact there) and the Duhamel
/// integral of the interpolant is taken exactly.
SecondOrderSolution second_order_solve(const LinearizedSolution& y,
                                       const SecondOrderOptions& options = {});

/// Same scheme for an arbitrary y(t) on [0, horizon] with `breaks` as
/// mandatory step boundaries.
SecondOrderSolution second_order_solve(const std::function<SineSpectrum(double)>& y_at,
                                       int modes, double viscosity, double horizon,
                                       const std::vector<double>& breaks = {},
                                       const SecondOrderOptions& options = {});

struct BurgersOptions {
  int sample_every = 1;
  /// Steps are split while dt * max|psi| * pi * M exceeds this.
  double cfl = 1.0;
};

struct BurgersSolution {
  SpectralPath path;
  std::vector<std::string> warnings;
  int substeps = 0;  // extra steps forced by the CFL restriction
};

/// psi_t + psi psi_x - nu psi_xx = u(t), Dirichlet, by ETDRK4 in sine modes
/// (phi-functions by contour means). Throws BlowUpError on non-finite modes.
BurgersSolution burgers_solve(const SineSpectrum& psi0, const ControlSignal& u, double viscosity,
                              double dt, const BurgersOptions& options = {});

/// Physical problem on [0, eps] with unit viscosity versus the normalized
/// problem on [0, 1] with viscosity eps: psi <- eps psi(eps t, x),
/// u <- eps^2 u(eps t).
struct ScaledProblem {
  SpectralPath psi;
  ControlSignal u;
};

ScaledProblem to_normalized(const SpectralPath& psi_physical, const ControlSignal& u_physical,
                            double eps);
ScaledProblem to_physical(const SpectralPath& psi_normalized, const ControlSignal& u_normalized,
                          double eps);

}  // namespace quadobs::burgers
