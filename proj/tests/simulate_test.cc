#include <cmath>

#include <gtest/gtest.h>

#include "quadobs/errors.h"
#include "quadobs/obstruction.h"
#include "quadobs/parser.h"
#include "quadobs/simulate.h"

namespace quadobs {
namespace {

PolyVectorField field(const char* text, int dim) { return parse_vector_field(text, dim); }

TEST(Integrate, DoubleIntegratorWithConstantControl) {
  const auto traj = integrate_affine(field("0; x1", 2), field("1; 0", 2), ControlSignal::Constant(1.0, 1.0),
                                     Eigen::VectorXd::Zero(2), 1e-2);
  EXPECT_NEAR(traj.final_state()(0), 1.0, 1e-13);
  EXPECT_NEAR(traj.final_state()(1), 0.5, 1e-13);
  EXPECT_DOUBLE_EQ(traj.times.back(), 1.0);
}

TEST(Integrate, FourthOrderConvergence) {
  // x' = x^2 from 1 with u = 0: x(t) = 1 / (1 - t).
  const auto f0 = field("x1^2", 1);
  const auto f1 = field("0", 1);
  const Eigen::VectorXd x0 = Eigen::VectorXd::Ones(1);
  const auto err = [&](double h) {
    return std::abs(integrate_affine(f0, f1, ControlSignal::Zero(0.5), x0, h).final_state()(0) - 2.0);
  };
  EXPECT_NEAR(std::log2(err(0.01) / err(0.005)), 4.0, 0.2);
}

TEST(Integrate, BlowUpIsReported) {
  EXPECT_THROW(integrate_affine(field("x1^2", 1), field("0", 1), ControlSignal::Zero(2.0), Eigen::VectorXd::Ones(1),
                                1e-2),
               BlowUpError);
}

TEST(Integrate, SamplingKeepsFinalState) {
  const auto traj = integrate_affine(field("0; x1", 2), field("1; 0", 2), ControlSignal::Constant(1.0, 1.0),
                                     Eigen::VectorXd::Zero(2), 1e-3, 7);
  EXPECT_DOUBLE_EQ(traj.times.front(), 0.0);
  EXPECT_DOUBLE_EQ(traj.times.back(), 1.0);
  EXPECT_EQ(traj.times.size(), traj.states.size());
}

TEST(Drift, SussmannPairingEqualsTwiceEnergy) {
  const auto f0 = field("0; x1^2", 2);
  const auto f1 = field("1; 0", 2);
  const BracketFiltration filt = s2_span(f0, f1);
  const std::vector<ControlSignal> controls = {ControlSignal::Sine(0.5, 0.05, 20.0),
                                               ControlSignal::Constant(0.5, -0.03)};
  DriftOptions opts;
  opts.step = 5e-4;
  const DriftReport r = drift_experiment(f0, f1, filt, QuadraticGraphFit::Zero(filt), controls, opts);
  EXPECT_EQ(r.violations, 0);
  for (const auto& s : r.samples) EXPECT_NEAR(s.ratio, 2.0, 1e-8);
}

TEST(Manifold, GraphRecoveredForS2InS1) {
  const auto f0 = field("0; x1; x1*x2", 3);
  const auto f1 = field("1; 0; 0", 3);
  GraphFitOptions opts;
  opts.ensemble.count = 10;
  opts.ensemble.seed = 3;
  const QuadraticGraphFit fit = fit_invariant_graph(f0, f1, opts);
  EXPECT_NEAR(fit.coefficient(0, 1, 1), 0.5, 1e-6);
  EXPECT_NEAR(fit.coefficient(0, 0, 0), 0.0, 1e-6);
  EXPECT_NEAR(fit.coefficient(0, 0, 1), 0.0, 1e-6);
  Eigen::VectorXd x(3);
  x << 0.1, 0.2, 0.02;
  EXPECT_NEAR(fit.defect(x).norm(), 0.0, 1e-6);
  const auto traj = integrate_affine(f0, f1, ControlSignal::Sine(1.0, 0.1, 5.0), Eigen::VectorXd::Zero(3), 1e-3);
  EXPECT_LT(manifold_residual(traj, fit).max_residual, 1e-8);
}

TEST(Manifold, DriftCaseRefusedUnlessAllowed) {
  GraphFitOptions opts;
  opts.ensemble.count = 5;
  EXPECT_THROW(fit_invariant_graph(field("0; x1^2", 2), field("1; 0", 2), opts), std::domain_error);
}

}  // namespace
}  // namespace quadobs
