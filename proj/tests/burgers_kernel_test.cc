#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "quadobs/burgers/kernel.h"
#include "quadobs/errors.h"

namespace quadobs::burgers {
namespace {

SineSpectrum rho(int modes) { return SineSpectrum::Mode(modes, 2); }

TEST(K0, ValuesAndMixedDerivative) {
  EXPECT_NEAR(kernel_K0_value(0.0, 0.0), std::pow(2.0, 1.5), 1e-15);
  EXPECT_NEAR(kernel_K0_value(1.0, 1.0), 0.0, 1e-15);
  EXPECT_NEAR(kernel_K0_value(0.2, 0.7), std::pow(1.1, 1.5) - std::pow(0.5, 1.5), 1e-15);
  const double h = 1e-4, s = 0.2, t = 0.7;
  const double fd = (kernel_K0_value(s + h, t + h) - kernel_K0_value(s + h, t - h) - kernel_K0_value(s - h, t + h) +
                     kernel_K0_value(s - h, t - h)) /
                    (4 * h * h);
  EXPECT_NEAR(kernel_K0_mixed(s, t), fd, 1e-6);
}

TEST(KEps, SymmetricAndVanishesAtFinalTime) {
  const KernelEpsEvaluator k(1e-2, rho(64), 64);
  EXPECT_NEAR(k(0.2, 0.7), k(0.7, 0.2), 1e-16);
  EXPECT_NEAR(k(1.0, 0.3), 0.0, 1e-16);
  EXPECT_GT(k.term_count(), 0u);
}

TEST(KEps, MixedDerivativeMatchesFiniteDifference) {
  const KernelEpsEvaluator k(1e-2, rho(64), 64);
  const double h = 1e-4, s = 0.3, t = 0.6;
  const double fd = (k(s + h, t + h) - k(s + h, t - h) - k(s - h, t + h) + k(s - h, t - h)) / (4 * h * h);
  EXPECT_NEAR(k.mixed_derivative(s, t), fd, 1e-5 * std::abs(fd));
  EXPECT_THROW(k.mixed_derivative(0.4, 0.4), std::domain_error);
}

TEST(KEps, QuadraticFormEqualsSecondOrderProjection) {
  const double eps = 1e-2;
  const int modes = 96;
  const ControlSignal u = ControlSignal::Sine(1.0, 1.0, 5.0);
  const KernelMatrix km = kernel_K_eps(eps, rho(modes), 33, modes);
  QuadFormOptions opts;
  opts.route = QuadFormOptions::Route::kEvaluator;
  const double form = quad_form(km, u, opts);
  const double proj = second_order_solve(linearized_solve(u, eps, modes)).path.final_state().inner(rho(modes));
  EXPECT_NEAR(form, proj, 1e-8 * std::abs(proj));
}

TEST(KernelMatrix, SymmetryAndMatrixRoute) {
  const KernelMatrix k0 = kernel_K0(65);
  EXPECT_EQ(k0.size(), 65);
  EXPECT_LT(k0.symmetry_defect(), 1e-15);
  EXPECT_DOUBLE_EQ(k0.nodes.back(), 1.0);
  // Matrix route against direct quadrature.
  const ControlSignal u = ControlSignal::Sine(1.0, 1.0, 2.0);
  QuadFormOptions matrix;
  matrix.route = QuadFormOptions::Route::kMatrix;
  const KernelMatrix smooth = kernel_matrix(KernelKind::kGeneric, "st", [](double s, double t) { return s * t; }, 65);
  // s t is bilinear, so the interpolant is exact.
  const double direct = kernel_quadratic_form([](double s, double t) { return s * t; }, partition_signal(u, 32));
  EXPECT_NEAR(quad_form(smooth, u, matrix), direct, 1e-13);
}

TEST(KernelMatrix, HatMomentsSumToIntegral) {
  const std::vector<double> nodes = {0.0, 0.25, 0.5, 0.75, 1.0};
  const Eigen::VectorXd b = hat_moments(nodes, ControlSignal::Constant(1.0, 2.0));
  EXPECT_NEAR(b.sum(), 2.0, 1e-15);
  EXPECT_NEAR(b(0), 0.25, 1e-15);
  EXPECT_NEAR(b(2), 0.5, 1e-15);
}

TEST(K0Form, TwoRoutesAgreeAndArePositive) {
  for (const ControlSignal& u : {ControlSignal::Constant(1.0, 1.0), ControlSignal::Sine(1.0, 1.0, 9.0),
                                 ControlSignal(PiecewisePolynomial(1.0, {{1.0}, {-2.0}, {0.5, 3.0}}))}) {
    const K0FormCheck c = k0_form_check(u);
    EXPECT_LT(c.relative_gap, 1e-8);
    EXPECT_GT(c.direct, 0.0);
  }
}

TEST(K0Form, LimitKernelAlwaysCrossChecks) {
  const KernelMatrix k0 = kernel_K0(33);
  const ControlSignal u = ControlSignal::Sine(1.0, 1.0, 3.0);
  EXPECT_NEAR(quad_form(k0, u), k0_form_check(u).direct, 1e-10);
}

TEST(Rho, CalibrationMakesConstantControlPositive) {
  const RhoCalibration cal = calibrate_rho(1e-2, 128);
  const KernelEpsEvaluator k(1e-2, cal.rho, 128);
  const double form = kernel_quadratic_form([&k](double s, double t) { return k(s, t); },
                                            partition_signal(ControlSignal::Constant(1.0, 1.0), 32));
  EXPECT_GT(form, 0.0);
  EXPECT_NEAR(std::abs(cal.rho[2]), 1.0, 1e-15);
}

TEST(Wsio, AbsSqrtKernelSatisfiesConditions) {
  WsioOptions opts;
  opts.samples = 2000;
  std::vector<std::vector<ControlSignal>> ens = {{ControlSignal::Constant(1.0, 1.0), ControlSignal::Sine(1.0, 1.0, 4.0)}};
  const WsioReport r = wsio_bound([](double t, double s) { return 1.0 / std::sqrt(std::abs(t - s)); }, ens, opts);
  EXPECT_TRUE(r.weakly_singular);
  EXPECT_LE(r.kappa, std::numbers::sqrt2);
  EXPECT_NEAR(r.empirical_constant, 1.0 / r.kappa, 1e-8);
}

TEST(Wsio, StrongSingularityIsFlagged) {
  WsioOptions opts;
  opts.samples = 2000;
  opts.min_separation = 1e-6;
  const WsioReport r = wsio_bound([](double t, double s) { return 1.0 / std::abs(t - s); }, {}, opts);
  EXPECT_FALSE(r.weakly_singular);
}

TEST(Drift, SignAlignedInitialHasPositiveProjection) {
  const SineSpectrum r = rho(64);
  EXPECT_GT(sign_aligned_initial(r, 1e-3).inner(r), 0.0);
  EXPECT_GT(sign_aligned_initial(r * -1.0, 1e-3).inner(r * -1.0), 0.0);
}

}  // namespace
}  // namespace quadobs::burgers
