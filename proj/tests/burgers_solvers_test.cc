#include <cmath>

#include <gtest/gtest.h>

#include "quadobs/burgers/solvers.h"
#include "quadobs/errors.h"

namespace quadobs::burgers {
namespace {

constexpr double kNu = 0.01;

TEST(Linearized, ConstantControlClosedForm) {
  const LinearizedSolution y = linearized_solve(ControlSignal::Constant(1.0, 1.0), kNu, 32);
  const SineSpectrum q = SineSpectrum::ConstantOne(32);
  const SineSpectrum y1 = y.at(0.6);
  for (int m = 1; m <= 32; ++m) {
    const double l = eigenvalue(m, kNu);
    EXPECT_NEAR(y1[m], q[m] * (1.0 - std::exp(-l * 0.6)) / l, 1e-15) << m;
  }
}

TEST(Linearized, EvenModesVanish) {
  const LinearizedSolution y = linearized_solve(ControlSignal::Sine(1.0, 1.0, 7.0), kNu, 32);
  const SineSpectrum s = y.at(1.0);
  for (int m = 2; m <= 32; m += 2) EXPECT_EQ(s[m], 0.0);
}

TEST(Linearized, AdvanceComposes) {
  const LinearizedSolution y = linearized_solve(ControlSignal::Sine(1.0, 2.0, 5.0), kNu, 16);
  EXPECT_LT((y.advance(y.at(0.25), 0.25, 0.5) - y.at(0.75)).l2_norm(), 1e-15);
}

TEST(SecondOrder, MatchesGenericRoute) {
  const ControlSignal u = ControlSignal::Sine(1.0, 1.0, 3.0);
  const LinearizedSolution y = linearized_solve(u, kNu, 32);
  const auto a = second_order_solve(y);
  const auto b = second_order_solve([&y](double t) { return y.at(t); }, 32, kNu, 1.0);
  EXPECT_LT((a.path.final_state() - b.path.final_state()).l2_norm(), 1e-12);
}

TEST(SecondOrder, ScalesQuadratically) {
  const ControlSignal u = ControlSignal::Sine(1.0, 1.0, 3.0);
  const auto z1 = second_order_solve(linearized_solve(u, kNu, 32)).path.final_state();
  const auto z3 = second_order_solve(linearized_solve(u.scaled(3.0), kNu, 32)).path.final_state();
  EXPECT_LT((z3 - z1 * 9.0).l2_norm(), 1e-12 * (1.0 + z3.l2_norm()));
}

TEST(Burgers, ExpansionErrorIsCubic) {
  // psi - a y - a^2 z = O(a^3).
  const ControlSignal u = ControlSignal::Sine(1.0, 1.0, 4.0);
  const int modes = 64;
  const SineSpectrum y = linearized_solve(u, kNu, modes).at(1.0);
  const SineSpectrum z = second_order_solve(linearized_solve(u, kNu, modes)).path.final_state();
  const auto err = [&](double a) {
    const SineSpectrum psi = burgers_solve(SineSpectrum::Zero(modes), u.scaled(a), kNu, 1e-3).path.final_state();
    return (psi - y * a - z * (a * a)).l2_norm();
  };
  const double ratio = err(0.2) / err(0.1);
  EXPECT_NEAR(std::log2(ratio), 3.0, 0.2);
}

TEST(Burgers, EnergyIdentityWithoutControl) {
  // d/dt (1/2) |psi|^2 = -nu |psi_x|^2 when u = 0.
  const int modes = 64;
  const SineSpectrum psi0 = SineSpectrum::FromPolynomial({0.0, 1.0, -1.0}, modes) * 2.0;
  const auto sol = burgers_solve(psi0, ControlSignal::Zero(0.5), kNu, 1e-3);
  double dissipation = 0.0;
  const auto grad_sq = [](const SineSpectrum& s) {
    double g = 0.0;
    for (int m = 1; m <= s.modes(); ++m) g += std::pow(m * std::numbers::pi * s[m], 2);
    return g;
  };
  for (size_t i = 1; i < sol.path.times.size(); ++i) {
    const double h = sol.path.times[i] - sol.path.times[i - 1];
    dissipation += 0.5 * h * (grad_sq(sol.path.states[i]) + grad_sq(sol.path.states[i - 1]));
  }
  const double lhs = 0.5 * (std::pow(sol.path.final_state().l2_norm(), 2) - std::pow(psi0.l2_norm(), 2));
  EXPECT_NEAR(lhs, -kNu * dissipation, 1e-5 * std::abs(lhs));
}

TEST(Burgers, ZeroStaysZero) {
  const auto sol = burgers_solve(SineSpectrum::Zero(16), ControlSignal::Zero(1.0), kNu, 1e-2);
  EXPECT_EQ(sol.path.final_state().l2_norm(), 0.0);
  EXPECT_TRUE(sol.warnings.empty());
}

TEST(Burgers, CflSubstepsAreReported) {
  const auto sol = burgers_solve(SineSpectrum::Mode(64, 1, 50.0), ControlSignal::Zero(0.01), kNu, 1e-2);
  EXPECT_GT(sol.substeps, 0);
  EXPECT_FALSE(sol.warnings.empty());
}

TEST(Scaling, RoundTripIsIdentity) {
  SpectralPath p;
  p.times = {0.0, 0.5, 1.0};
  p.states = {SineSpectrum::Mode(4, 1), SineSpectrum::Mode(4, 2, 0.5), SineSpectrum::Mode(4, 3, 0.25)};
  const ControlSignal u = ControlSignal::Sine(1.0, 2.0, 3.0);
  const ScaledProblem back = to_physical(to_normalized(p, u, 0.05).psi, to_normalized(p, u, 0.05).u, 0.05);
  for (size_t i = 0; i < p.times.size(); ++i) {
    EXPECT_NEAR(back.psi.times[i], p.times[i], 1e-15);
    EXPECT_LT((back.psi.states[i] - p.states[i]).l2_norm(), 1e-15);
  }
  EXPECT_NEAR(back.u(0.37), u(0.37), 1e-13);
  EXPECT_NEAR(back.u.horizon(), 1.0, 1e-15);
}

TEST(Scaling, PhysicalAndNormalizedSolutionsAgree) {
  // Unit viscosity on [0, T] with T = eps against viscosity eps on [0, 1].
  const double eps = 0.05;
  const int modes = 32;
  const ControlSignal u_phys = ControlSignal::Sine(eps, 40.0, 60.0);
  const SineSpectrum psi0 = SineSpectrum::FromPolynomial({0.0, 1.0, -1.0}, modes);
  const auto phys = burgers_solve(psi0, u_phys, 1.0, eps / 500.0);
  const ScaledProblem norm = to_normalized(phys.path, u_phys, eps);
  const auto direct = burgers_solve(psi0 * eps, norm.u, eps, 1.0 / 500.0);
  EXPECT_LT((direct.path.final_state() - norm.psi.final_state()).l2_norm(),
            1e-6 * norm.psi.final_state().l2_norm());
}

}  // namespace
}  // namespace quadobs::burgers
