#include "quadobs/steering.h"

#include <cmath>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "quadobs/errors.h"
#include "quadobs/obstruction.h"
#include "quadobs/quadrature.h"
#include "quadobs/simulate.h"

namespace quadobs {

namespace {

// Smallest p with A^p = 0 (exactly, for matrices converted from rationals), or 0.
int double_nilpotency(const Eigen::MatrixXd& a) {
  Eigen::MatrixXd power = a;
  for (int p = 1; p <= a.rows(); ++p) {
    if (power.isZero(0.0)) return p;
    power = power * a;
  }
  return 0;
}

Eigen::MatrixXd nilpotent_exponential(const Eigen::MatrixXd& a, double s, int index) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Identity(a.rows(), a.cols());
  Eigen::MatrixXd term = out;
  for (int k = 1; k < index; ++k) {
    term = term * a * (s / k);
    out += term;
  }
  return out;
}

}  // namespace

double SteeringControl::operator()(double t) const {
  if (lambda.size() == 0) return 0.0;
  return -b.dot(matrix_exponential(a.transpose(), horizon - t) * lambda);
}

Eigen::MatrixXd matrix_exponential(const Eigen::MatrixXd& a, double s) {
  const int index = double_nilpotency(a);
  if (index > 0) return nilpotent_exponential(a, s, index);
  return (a * s).exp();
}

Eigen::MatrixXd controllability_gramian(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                                        double horizon) {
  const int n = static_cast<int>(a.rows());
  const int index = double_nilpotency(a);
  if (index > 0) {
    // e^{As} b = sum_j s^j A^j b / j!, integrate the polynomial entries.
    std::vector<Eigen::VectorXd> v;
    Eigen::VectorXd w = b;
    double factorial = 1.0;
    for (int j = 0; j < index; ++j) {
      if (j > 0) factorial *= j;
      v.push_back(w / factorial);
      w = a * w;
    }
    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j < index; ++j)
      for (int k = 0; k < index; ++k)
        gram += v[j] * v[k].transpose() * (std::pow(horizon, j + k + 1) / (j + k + 1));
    return gram;
  }
  const auto& rule = gauss_legendre_unit(20);
  const int panels = std::max(8, static_cast<int>(std::ceil(4.0 * a.norm() * horizon)));
  const double width = horizon / panels;
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(n, n);
  for (int p = 0; p < panels; ++p) {
    for (size_t i = 0; i < rule.first.size(); ++i) {
      const double s = (p + rule.first[i]) * width;
      const Eigen::VectorXd e = (a * s).exp() * b;
      gram += rule.second[i] * width * e * e.transpose();
    }
  }
  return gram;
}

namespace {

Eigen::VectorXd solve_gramian(const Eigen::MatrixXd& gram, const Eigen::VectorXd& rhs) {
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(gram);
  const auto& sigma = svd.singularValues();
  if (sigma.size() == 0 || sigma[sigma.size() - 1] <= 1e-10 * sigma[0]) {
    std::ostringstream os;
    os << "controllability Gramian is numerically singular; singular values:";
    for (int i = 0; i < sigma.size(); ++i) os << " " << sigma[i];
    throw RankDeficiencyError(os.str());
  }
  return gram.ldlt().solve(rhs);
}

void sample(SteeringControl& c, int grid) {
  c.times.clear();
  c.samples.clear();
  for (int i = 0; i <= grid; ++i) {
    const double t = c.horizon * i / grid;
    c.times.push_back(t);
    c.samples.push_back(c(t));
  }
}

double linear_residual(const SteeringControl& c, const Eigen::VectorXd& x0, int steps) {
  auto rhs = [&](double t, const Eigen::VectorXd& y) -> Eigen::VectorXd {
    return c.a * y + c(t) * c.b;
  };
  Eigen::VectorXd y = x0;
  const double h = c.horizon / steps;
  for (int i = 0; i < steps; ++i) y = rk4_step(rhs, i * h, y, h);
  return y.norm();
}

}  // namespace

SteeringControl gramian_steer(const LinearPair& pair, const Eigen::VectorXd& x0, double horizon,
                              const SteeringOptions& options) {
  if (!(horizon > 0.0)) throw std::invalid_argument("gramian_steer: horizon must be > 0");
  const int n = pair.dim();
  if (x0.size() != n) throw std::invalid_argument("gramian_steer: x0 has the wrong dimension");
  const int rank = kalman_rank(pair);
  if (rank < n) {
    throw RankDeficiencyError("gramian_steer: Kalman rank " + std::to_string(rank) + " < " +
                              std::to_string(n));
  }
  SteeringControl c;
  c.horizon = horizon;
  c.a = pair.a.to_double();
  c.b = to_double(pair.b);
  c.gramian = controllability_gramian(c.a, c.b, horizon);
  c.lambda = solve_gramian(c.gramian, matrix_exponential(c.a, horizon) * x0);
  c.iterations = 1;
  sample(c, options.grid);
  c.residual = linear_residual(c, x0, options.sim_steps);
  c.residual_history.push_back(c.residual);
  return c;
}

SteeringControl nonlinear_steer(const PolyVectorField& f0, const PolyVectorField& f1,
                                const Eigen::VectorXd& x0, double horizon, int iterations,
                                double tol, const SteeringOptions& options) {
  if (iterations < 1) throw std::invalid_argument("nonlinear_steer: iterations must be >= 1");
  const LinearPair pair = linearize(f0, f1);
  SteeringControl c = gramian_steer(pair, x0, horizon, options);
  c.residual_history.clear();
  const CompiledField c0(f0);
  const CompiledField c1(f1);
  const double h = horizon / options.sim_steps;
  int growth = 0;
  for (int k = 1; k <= iterations; ++k) {
    const auto rec = integrate_affine(c0, c1, [&c](double t) { return c(t); }, horizon, x0, h,
                                      options.sim_steps);
    c.residual = rec.final_state().norm();
    c.iterations = k;
    if (!c.residual_history.empty() && c.residual > c.residual_history.back()) {
      ++growth;
    } else {
      growth = 0;
    }
    c.residual_history.push_back(c.residual);
    if (growth >= 3) {
      throw DivergenceError("nonlinear_steer: residual grew for 3 consecutive iterations",
                            c.residual_history);
    }
    if (c.residual <= tol || k == iterations) break;
    c.lambda += solve_gramian(c.gramian, rec.final_state());
  }
  sample(c, options.grid);
  return c;
}

}  // namespace quadobs
