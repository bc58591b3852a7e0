#pragma once

#include <vector>

#include <Eigen/Dense>

#include "quadobs/vector_field.h"

namespace quadobs {

/// u(t) = -b^T exp(A^T (T - t)) lambda on [0, T].
struct SteeringControl {
  double horizon = 0.0;
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  Eigen::VectorXd lambda;
  Eigen::MatrixXd gramian;  // W_T
  std::vector<double> times;
  std::vector<double> samples;  // u on `times`
  /// |x(T)| measured by re-simulation with this control.
  double residual = 0.0;
  std::vector<double> residual_history;
  int iterations = 0;

  double operator()(double t) const;
};

/// e^{A s}: exact finite series for nilpotent A, scaling and squaring
/// otherwise.
Eigen::MatrixXd matrix_exponential(const Eigen::MatrixXd& a, double s);

/// W_T = int_0^T e^{A s} b b^T e^{A^T s} ds; closed form for nilpotent A,
/// composite Gauss-Legendre otherwise.
Eigen::MatrixXd controllability_gramian(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                                        double horizon);

struct SteeringOptions {
  int grid = 200;         // sample points reported in `samples`
  int sim_steps = 2000;   // RK4 steps for the re-simulation
};

/// Minimum-energy control steering y' = A y + u b from x0 to 0 at T. Throws
/// RankDeficiencyError when the Kalman rank is deficient or W_T is
/// numerically singular (message carries the singular values).
SteeringControl gramian_steer(const LinearPair& pair, const Eigen::VectorXd& x0, double horizon,
                              const SteeringOptions& options = {});

/// Picard iteration for x' = f0(x) + u f1(x): lambda_{k+1} = lambda_k +
/// W_T^{-1} x_k(T), starting from the linear steering control. Stops when
/// |x(T)| <= tol or after `iterations`; throws DivergenceError when the
/// residual grows three times in a row.
SteeringControl nonlinear_steer(const PolyVectorField& f0, const PolyVectorField& f1,
                                const Eigen::VectorXd& x0, double horizon, int iterations,
                                double tol = 1e-12, const SteeringOptions& options = {});

}  // namespace quadobs
