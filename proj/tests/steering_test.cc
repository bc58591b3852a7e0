#include <cmath>

#include <gtest/gtest.h>

#include "quadobs/errors.h"
#include "quadobs/parser.h"
#include "quadobs/steering.h"

namespace quadobs {
namespace {

PolyVectorField field(const char* text, int dim) { return parse_vector_field(text, dim); }

TEST(Steering, ScalarIntegratorUsesConstantControl) {
  const LinearPair p = linearize(field("0", 1), field("1", 1));
  const SteeringControl c = gramian_steer(p, Eigen::VectorXd::Ones(1), 1.0);
  for (double t : {0.0, 0.3, 1.0}) EXPECT_NEAR(c(t), -1.0, 1e-14);
  EXPECT_LT(c.residual, 1e-12);
}

TEST(Steering, DoubleIntegratorGramian) {
  const LinearPair p = linearize(field("0; x1", 2), field("1; 0", 2));
  Eigen::Matrix2d w;
  w << 1.0, 0.5, 0.5, 1.0 / 3.0;
  EXPECT_LT((controllability_gramian(p.a.to_double(), to_double(p.b), 1.0) - w).cwiseAbs().maxCoeff(), 1e-12);
  const SteeringControl c = gramian_steer(p, Eigen::Vector2d(1.0, 0.0), 1.0);
  EXPECT_LT(c.residual, 1e-8);
}

TEST(Steering, ExponentialMatchesSeriesForNonNilpotent) {
  Eigen::Matrix2d a;
  a << 0.0, 1.0, -1.0, 0.0;
  const Eigen::MatrixXd e = matrix_exponential(a, 0.7);
  EXPECT_NEAR(e(0, 0), std::cos(0.7), 1e-14);
  EXPECT_NEAR(e(0, 1), std::sin(0.7), 1e-14);
}

TEST(Steering, RankDeficientIsRejected) {
  const LinearPair p = linearize(field("0; 0", 2), field("1; 0", 2));
  EXPECT_THROW(gramian_steer(p, Eigen::Vector2d(1.0, 1.0), 1.0), RankDeficiencyError);
}

TEST(Steering, NonlinearPicardConverges) {
  const SteeringControl c =
      nonlinear_steer(field("0; x1 + x1^2", 2), field("1; 0", 2), Eigen::Vector2d(0.01, 0.01), 1.0, 10);
  EXPECT_LE(c.residual, 1e-6);
  EXPECT_LE(c.iterations, 10);
}

TEST(Steering, LinearSystemConvergesInOneIteration) {
  const SteeringControl c = nonlinear_steer(field("0; x1", 2), field("1; 0", 2), Eigen::Vector2d(0.1, 0.0), 1.0, 10,
                                            1e-10);
  EXPECT_LE(c.iterations, 1);
  EXPECT_LT(c.residual, 1e-10);
}

TEST(Steering, ZeroStateGivesZeroControl) {
  const SteeringControl c = nonlinear_steer(field("0; x1 + x1^2", 2), field("1; 0", 2), Eigen::Vector2d::Zero(), 1.0, 5);
  EXPECT_EQ(c.residual, 0.0);
  for (double u : c.samples) EXPECT_EQ(u, 0.0);
}

}  // namespace
}  // namespace quadobs
