#include "quadobs/studies.h"

#include <algorithm>
#include <cmath>

#include "quadobs/obstruction.h"

namespace quadobs {

PolyVectorField random_poly_field(std::mt19937_64& rng, int dim, int max_degree, int terms_per_component) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_int_distribution<int> count(0, terms_per_component);
  std::uniform_int_distribution<int> var(0, dim - 1);
  std::uniform_int_distribution<int> degree(0, max_degree);
  std::vector<Polynomial> comps;
  for (int i = 0; i < dim; ++i) {
    Polynomial p(dim);
    const int n = count(rng);
    for (int t = 0; t < n; ++t) {
      Monomial m(dim, 0);
      const int d = degree(rng);
      for (int e = 0; e < d; ++e) ++m[var(rng)];
      p.add_term(m, Rational(coeff(rng)));
    }
    comps.push_back(p.normalized());
  }
  return PolyVectorField(std::move(comps));
}

LinearPair random_linear_pair(std::mt19937_64& rng, int dim) {
  std::uniform_int_distribution<int> coeff(-2, 2);
  std::bernoulli_distribution sparse(0.5);
  LinearPair pair{RationalMatrix(dim, dim), RationalVector(dim, 0)};
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) pair.a(i, j) = sparse(rng) ? 0 : coeff(rng);
    pair.b[i] = sparse(rng) ? 0 : coeff(rng);
  }
  return pair;
}

PolyVectorField linear_field(const RationalMatrix& a) {
  std::vector<Polynomial> comps;
  for (int i = 0; i < a.rows(); ++i) {
    Polynomial p(a.cols());
    for (int j = 0; j < a.cols(); ++j) p = p + Polynomial::Variable(a.cols(), j) * a(i, j);
    comps.push_back(p);
  }
  return PolyVectorField(std::move(comps));
}

namespace {

/// Central-difference Jacobian of f at x, h = 1e-5.
Eigen::MatrixXd fd_jacobian(const CompiledField& f, const Eigen::VectorXd& x) {
  constexpr double h = 1e-5;
  Eigen::MatrixXd j(f.dim(), x.size());
  for (int c = 0; c < x.size(); ++c) {
    Eigen::VectorXd xp = x, xm = x;
    xp(c) += h;
    xm(c) -= h;
    j.col(c) = (f(xp) - f(xm)) / (2.0 * h);
  }
  return j;
}

}  // namespace

BracketAlgebraStudy bracket_algebra_study(int fields, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dim_dist(1, 4);
  std::uniform_real_distribution<double> point(-1.0, 1.0);
  BracketAlgebraStudy study;
  for (int n = 0; n < fields; ++n) {
    const int dim = dim_dist(rng);
    const PolyVectorField f = random_poly_field(rng, dim, 3);
    const PolyVectorField g = random_poly_field(rng, dim, 3);
    const PolyVectorField h = random_poly_field(rng, dim, 3);
    const PolyVectorField fg = lie_bracket(f, g);
    if (!(fg + lie_bracket(g, f)).normalized().is_zero()) ++study.antisymmetry_failures;
    const PolyVectorField jacobi =
        lie_bracket(f, lie_bracket(g, h)) + lie_bracket(g, lie_bracket(h, f)) + lie_bracket(h, fg);
    if (!jacobi.normalized().is_zero()) ++study.jacobi_failures;
    const CompiledField cf(f), cg(g), cfg(fg);
    for (int p = 0; p < 10; ++p) {
      Eigen::VectorXd x(dim);
      for (int i = 0; i < dim; ++i) x(i) = point(rng);
      const Eigen::VectorXd oracle = fd_jacobian(cg, x) * cf(x) - fd_jacobian(cf, x) * cg(x);
      const Eigen::VectorXd exact = cfg(x);
      study.max_fd_error =
          std::max(study.max_fd_error, (exact - oracle).norm() / std::max(1.0, exact.norm()));
      ++study.fd_points;
    }
    ++study.fields;
  }
  return study;
}

KalmanStudy kalman_consistency_study(int systems, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dim_dist(1, 4);
  KalmanStudy study;
  for (int n = 0; n < systems; ++n) {
    const int dim = dim_dist(rng);
    const LinearPair pair = random_linear_pair(rng, dim);
    const PolyVectorField f0 = linear_field(pair.a);
    const PolyVectorField f1 = PolyVectorField::Constant(pair.b);
    const std::vector<RationalVector> s1 = s1_basis(f0, f1);
    const RationalMatrix k = kalman_matrix(pair);
    std::vector<RationalVector> joint = s1;
    for (int c = 0; c < k.cols(); ++c) joint.push_back(k.column(c));
    const int rk = rank(k);
    const int rs = rank_of(s1, dim);
    if (rk != rs || rank_of(joint, dim) != rk) ++study.mismatches;
    if (rk < dim) ++study.rank_deficient;
    ++study.systems;
  }
  return study;
}

}  // namespace quadobs
