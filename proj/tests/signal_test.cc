#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "quadobs/ensemble.h"
#include "quadobs/signal.h"

namespace quadobs {
namespace {

TEST(LocalPolynomial, CalculusHelpers) {
  const LocalPolynomial p = {1.0, -3.0, 2.0};  // (1 - s)(1 - 2s)
  EXPECT_DOUBLE_EQ(horner(p, 0.5), 0.0);
  EXPECT_EQ(poly_derivative(p), (LocalPolynomial{-3.0, 4.0}));
  EXPECT_DOUBLE_EQ(horner(poly_antiderivative(p), 1.0), 1.0 - 1.5 + 2.0 / 3.0);
  const auto roots = poly_roots_in(p, 2.0);
  ASSERT_EQ(roots.size(), 2u);
  EXPECT_NEAR(roots[0], 0.5, 1e-14);
  EXPECT_NEAR(roots[1], 1.0, 1e-14);
  EXPECT_NEAR(poly_sup_abs(p, 1.0), 1.0, 1e-15);
  EXPECT_NEAR(horner(poly_shift(p, 0.25), 0.5), horner(p, 0.75), 1e-15);
}

TEST(PiecewisePolynomial, PrimitiveIsContinuous) {
  const PiecewisePolynomial u(1.0, {{1.0}, {-1.0}, {0.0, 4.0}, {2.0}});
  const PiecewisePolynomial big_u = u.primitive();
  EXPECT_DOUBLE_EQ(big_u.evaluate(0.0), 0.0);
  EXPECT_LT(big_u.max_jump(0), 1e-15);
  EXPECT_NEAR(big_u.evaluate(1.0), 0.25 - 0.25 + 0.125 + 0.5, 1e-15);
  EXPECT_NEAR(big_u.derivative().evaluate(0.6), u.evaluate(0.6), 1e-15);
  EXPECT_EQ(u.locate(1.0), 3);
}

TEST(ControlSignal, IteratedPrimitiveOfConstant) {
  const ControlSignal one = ControlSignal::Constant(1.0, 1.0);
  EXPECT_NEAR(iterated_primitive(one, 3)(0.5), std::pow(0.5, 3) / 6.0, 1e-15);
  EXPECT_NEAR(hk_energy(one, 1), 1.0 / 3.0, 1e-14);
  EXPECT_NEAR(l2_norm(one), 1.0, 1e-14);
}

TEST(ControlSignal, SineCalculus) {
  const ControlSignal s = ControlSignal::Sine(1.0, 2.0, 3.0);
  EXPECT_NEAR(s.derivative()(0.3), 6.0 * std::cos(0.9), 1e-14);
  EXPECT_NEAR(s.primitive()(0.3), 2.0 * (1.0 - std::cos(0.9)) / 3.0, 1e-14);
  EXPECT_EQ(s.vanishing_order(1e-14), 0);
  EXPECT_NEAR(s.time_rescaled(2.0)(0.1), s(0.2), 1e-15);
  EXPECT_DOUBLE_EQ(s.time_rescaled(2.0).horizon(), 0.5);
}

TEST(ControlSignal, SobolevNormRejectsJumps) {
  const ControlSignal step(PiecewisePolynomial(1.0, {{1.0}, {-1.0}}));
  EXPECT_DOUBLE_EQ(sobolev_sup_norm(step, 0), 1.0);
  EXPECT_THROW(sobolev_sup_norm(step, 1), std::domain_error);
  EXPECT_NEAR(sobolev_sup_norm(step, -1), 0.5, 1e-15);
}

TEST(ControlSignal, WMinusOneThree) {
  // U(t) = t: (int t^3)^{1/3} = 4^{-1/3}.
  EXPECT_NEAR(w_minus1_p_norm(ControlSignal::Constant(1.0, 1.0), 3.0), std::cbrt(0.25), 1e-12);
}

TEST(ControlSignal, ParseLiterals) {
  const ControlSignal t = parse_signal("const(0.5) + sin(2, 3) + cos(1, 4)", 1.0);
  EXPECT_NEAR(t(0.2), 0.5 + 2.0 * std::sin(0.6) + std::cos(0.8), 1e-14);
  const ControlSignal p = parse_signal("poly[1, 2] poly[0]", 2.0);
  EXPECT_NEAR(p(0.5), 2.0, 1e-15);
  EXPECT_NEAR(p(1.5), 0.0, 1e-15);
}

TEST(Ensemble, AmplitudesAndVanishingConditions) {
  EnsembleSpec spec;
  spec.count = 60;
  spec.amplitude = 0.05;
  spec.norm = AmplitudeNorm::kW1Inf;
  spec.vanishing_order = 2;
  spec.horizon = 0.5;
  spec.seed = 9;
  const auto controls = generate_ensemble(spec);
  ASSERT_EQ(controls.size(), 60u);
  for (const auto& u : controls) {
    EXPECT_LE(amplitude_of(u, spec.norm), spec.amplitude * (1.0 + 1e-9));
    EXPECT_GE(amplitude_of(u, spec.norm), spec.amplitude * spec.min_fraction * (1.0 - 1e-9));
    EXPECT_GE(u.vanishing_order(1e-12), 2);
    EXPECT_DOUBLE_EQ(u.horizon(), 0.5);
  }
}

TEST(Ensemble, SeedDeterminesControls) {
  EnsembleSpec spec;
  spec.count = 5;
  const auto a = generate_ensemble(spec);
  const auto b = generate_ensemble(spec);
  spec.seed = 2;
  const auto c = generate_ensemble(spec);
  for (int i = 0; i < 5; ++i) {
    EXPECT_EQ(a[i](0.37), b[i](0.37));
    EXPECT_NE(a[i](0.37), c[i](0.37));
  }
}

TEST(Ensemble, FamilyNamesRoundTrip) {
  for (auto f : {EnsembleFamily::kPiecewiseConstant, EnsembleFamily::kHermiteCubic, EnsembleFamily::kTrigonometric,
                 EnsembleFamily::kMixed}) {
    EXPECT_EQ(parse_family(family_name(f)), f);
  }
  EXPECT_THROW(parse_family("gaussian"), std::exception);
}

}  // namespace
}  // namespace quadobs
