#include <random>

#include <gtest/gtest.h>

#include "quadobs/errors.h"
#include "quadobs/parser.h"
#include "quadobs/polynomial.h"
#include "quadobs/rational_matrix.h"
#include "quadobs/studies.h"
#include "quadobs/vector_field.h"

namespace quadobs {
namespace {

PolyVectorField field(const char* text, int dim) { return parse_vector_field(text, dim); }

TEST(Polynomial, ArithmeticIsExact) {
  const Polynomial x = Polynomial::Variable(2, 0);
  const Polynomial y = Polynomial::Variable(2, 1);
  const Polynomial p = (x + y).pow(2);
  EXPECT_EQ(p, x * x + x * y * Rational(2) + y * y);
  EXPECT_EQ(p.degree(), 2);
  EXPECT_TRUE((p - p).is_zero());
  EXPECT_EQ(p.evaluate(RationalVector{Rational(1, 3), Rational(2, 3)}), Rational(1));
}

TEST(Polynomial, DerivativeOfMonomial) {
  const Polynomial p = parse_polynomial("3*x1^2*x2 - x2", 2);
  EXPECT_EQ(p.derivative(0), parse_polynomial("6*x1*x2", 2));
  EXPECT_EQ(p.derivative(1), parse_polynomial("3*x1^2 - 1", 2));
}

TEST(Parser, DecimalsAndDivisionAreExact) {
  EXPECT_EQ(parse_rational("0.125"), Rational(1, 8));
  EXPECT_EQ(parse_rational("-2/7"), Rational(-2, 7));
  EXPECT_EQ(parse_polynomial("3/2*x1^2", 1).coefficient({2}), Rational(3, 2));
  EXPECT_EQ(parse_polynomial("0.25*(x1 + 2)", 1).constant_term(), Rational(1, 2));
}

TEST(Parser, ErrorsCarryColumn) {
  try {
    parse_polynomial("x1 + * x2", 2);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_GT(e.column(), 0);
  }
  EXPECT_THROW(parse_polynomial("x3", 2), ParseError);
  EXPECT_THROW(parse_vector_field("x1; x2", 3), ParseError);
}

TEST(LieBracket, ConventionDgFMinusDfG) {
  // f = (0, x1), g = e1: [f, g] = Dg f - Df g = -(0, 1).
  const PolyVectorField f = field("0; x1", 2);
  const PolyVectorField g = field("1; 0", 2);
  EXPECT_EQ(lie_bracket(f, g), field("0; -1", 2));
}

TEST(LieBracket, AdIterateMatchesSequence) {
  const PolyVectorField f0 = field("0; x1; x2^2 + x1^3", 3);
  const PolyVectorField f1 = field("1; 0; 0", 3);
  const auto seq = ad_sequence(f0, f1, 3);
  ASSERT_EQ(seq.size(), 4u);
  for (int k = 0; k <= 3; ++k) EXPECT_EQ(seq[k], ad_iterate(f0, f1, k)) << k;
  EXPECT_EQ(seq[0], f1);
}

TEST(LieBracket, AntisymmetryAndJacobiOnRandomFields) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    const int dim = 1 + trial % 4;
    const auto f = random_poly_field(rng, dim, 3);
    const auto g = random_poly_field(rng, dim, 3);
    const auto h = random_poly_field(rng, dim, 3);
    EXPECT_TRUE((lie_bracket(f, g) + lie_bracket(g, f)).is_zero());
    const auto jacobi = lie_bracket(f, lie_bracket(g, h)) + lie_bracket(g, lie_bracket(h, f)) +
                        lie_bracket(h, lie_bracket(f, g));
    EXPECT_TRUE(jacobi.is_zero());
  }
}

TEST(LieBracket, BracketStudyHasNoFailures) {
  const auto st = bracket_algebra_study(30, 3);
  EXPECT_EQ(st.antisymmetry_failures, 0);
  EXPECT_EQ(st.jacobi_failures, 0);
  EXPECT_EQ(st.fd_points, 300);
  EXPECT_LT(st.max_fd_error, 1e-6);
}

TEST(VectorField, LinearizeRejectsNonEquilibrium) {
  EXPECT_THROW(linearize(field("1; x1", 2), field("1; 0", 2)), std::domain_error);
  const LinearPair p = linearize(field("0; x1 + x1^2", 2), field("1; 0", 2));
  EXPECT_EQ(p.a(1, 0), Rational(1));
  EXPECT_EQ(p.a(0, 0), Rational(0));
  EXPECT_EQ(p.b, (RationalVector{1, 0}));
}

TEST(VectorField, CompiledMatchesExact) {
  const PolyVectorField f = field("x1*x2 - 2; x2^3 + 0.5*x1", 2);
  const CompiledField c(f);
  Eigen::VectorXd x(2);
  x << 0.3, -1.7;
  const Eigen::VectorXd got = c(x);
  const Eigen::VectorXd want = f.evaluate(x);
  EXPECT_NEAR(got(0), want(0), 1e-14);
  EXPECT_NEAR(got(1), want(1), 1e-14);
}

TEST(VectorField, ConjugationCommutesWithBracket) {
  RationalMatrix q(2, 2);
  q(0, 0) = 1;
  q(0, 1) = 2;
  q(1, 0) = 0;
  q(1, 1) = 1;
  const PolyVectorField f = field("x2^2; x1", 2);
  const PolyVectorField g = field("1 + x1; x1*x2", 2);
  EXPECT_EQ(lie_bracket(f.conjugate(q), g.conjugate(q)), lie_bracket(f, g).conjugate(q));
}

TEST(RationalMatrix, RankInverseAndProjector) {
  RationalMatrix m(3, 3);
  m(0, 0) = 1; m(0, 1) = 2; m(0, 2) = 3;
  m(1, 0) = 2; m(1, 1) = 4; m(1, 2) = 6;
  m(2, 0) = 0; m(2, 1) = 1; m(2, 2) = Rational(1, 3);
  EXPECT_EQ(rank(m), 2);
  EXPECT_THROW(inverse(m), std::domain_error);
  m(1, 2) = 7;
  EXPECT_EQ(rank(m), 3);
  EXPECT_EQ(m * inverse(m), RationalMatrix::Identity(3));

  const std::vector<RationalVector> basis = {{1, 1, 0}};
  const RationalMatrix p = orthogonal_projector(basis, 3);
  EXPECT_EQ(p * p, p);
  EXPECT_TRUE(p.is_symmetric());
  EXPECT_TRUE(is_zero(p * RationalVector{1, -1, 0}));
  EXPECT_TRUE(in_span(basis, {2, 2, 0}, 3));
  EXPECT_FALSE(in_span(basis, {0, 0, 1}, 3));
}

TEST(RationalMatrix, Nilpotency) {
  RationalMatrix a(3, 3);
  a(1, 0) = 1;
  a(2, 1) = 1;
  EXPECT_EQ(nilpotency_index(a), 3);
  EXPECT_EQ(nilpotency_index(RationalMatrix::Identity(2)), 0);
}

}  // namespace
}  // namespace quadobs
