#include "quadobs/simulate.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "quadobs/errors.h"

namespace quadobs {

TrajectoryRecord integrate_affine(const CompiledField& f0, const CompiledField& f1,
                                  const ControlFunction& u, double horizon,
                                  const Eigen::VectorXd& x0, double h, int sample_every) {
  if (!(h > 0.0)) throw std::invalid_argument("integrate_affine: step must be > 0");
  if (!(horizon > 0.0)) throw std::invalid_argument("integrate_affine: horizon must be > 0");
  if (sample_every < 1) throw std::invalid_argument("integrate_affine: sample_every must be >= 1");
  if (x0.size() != f0.dim() || f0.dim() != f1.dim()) {
    throw std::invalid_argument("integrate_affine: dimension mismatch");
  }
  const int steps = std::max(1, static_cast<int>(std::ceil(horizon / h - 1e-9)));
  const double dt = horizon / steps;
  auto rhs = [&](double t, const Eigen::VectorXd& x) -> Eigen::VectorXd {
    return f0(x) + u(t) * f1(x);
  };
  TrajectoryRecord rec;
  rec.step = dt;
  rec.times.push_back(0.0);
  rec.states.push_back(x0);
  Eigen::VectorXd x = x0;
  for (int i = 0; i < steps; ++i) {
    const double t = i * dt;
    x = rk4_step(rhs, t, x, dt);
    if (!x.allFinite()) throw BlowUpError("integrate_affine: non-finite state", t + dt);
    if ((i + 1) % sample_every == 0 || i + 1 == steps) {
      rec.times.push_back(i + 1 == steps ? horizon : (i + 1) * dt);
      rec.states.push_back(x);
    }
  }
  return rec;
}

TrajectoryRecord integrate_affine(const PolyVectorField& f0, const PolyVectorField& f1,
                                  const ControlSignal& u, const Eigen::VectorXd& x0,
                                  double h, int sample_every) {
  if (f0.dim() != f1.dim()) throw std::invalid_argument("integrate_affine: dimension mismatch");
  TrajectoryRecord rec = integrate_affine(CompiledField(f0), CompiledField(f1),
                                          [&u](double t) { return u(t); }, u.horizon(), x0, h,
                                          sample_every);
  rec.control = u;
  return rec;
}

namespace {

// Orthonormalizes in order, keeping the orientation of each input vector.
Eigen::MatrixXd gram_schmidt(const std::vector<RationalVector>& vectors, int dim) {
  Eigen::MatrixXd frame(dim, static_cast<int>(vectors.size()));
  for (size_t c = 0; c < vectors.size(); ++c) {
    Eigen::VectorXd v = to_double(vectors[c]);
    for (size_t k = 0; k < c; ++k) v -= frame.col(k).dot(v) * frame.col(k);
    frame.col(c) = v.normalized();
  }
  return frame;
}

QuadraticGraphFit empty_fit(const BracketFiltration& filtration) {
  QuadraticGraphFit fit;
  fit.s1_frame = gram_schmidt(rref_rows(filtration.projector), filtration.dim);
  fit.perp_frame = gram_schmidt(rref_rows(filtration.projector_perp), filtration.dim);
  const int d = static_cast<int>(fit.s1_frame.cols());
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) fit.monomials.emplace_back(i, j);
  fit.coeffs = Eigen::MatrixXd::Zero(fit.perp_frame.cols(), static_cast<int>(fit.monomials.size()));
  return fit;
}

Eigen::RowVectorXd monomial_row(const QuadraticGraphFit& fit, const Eigen::VectorXd& p) {
  Eigen::RowVectorXd row(static_cast<int>(fit.monomials.size()));
  for (size_t m = 0; m < fit.monomials.size(); ++m) {
    row[m] = p[fit.monomials[m].first] * p[fit.monomials[m].second];
  }
  return row;
}

}  // namespace

QuadraticGraphFit QuadraticGraphFit::Zero(const BracketFiltration& filtration) {
  QuadraticGraphFit fit = empty_fit(filtration);
  fit.decay_exponent = std::numeric_limits<double>::infinity();
  return fit;
}

Eigen::VectorXd QuadraticGraphFit::graph(const Eigen::VectorXd& p) const {
  if (coeffs.cols() == 0) return Eigen::VectorXd::Zero(coeffs.rows());
  return coeffs * monomial_row(*this, p).transpose();
}

double QuadraticGraphFit::coefficient(int r, int i, int j) const {
  if (i > j) std::swap(i, j);
  for (size_t m = 0; m < monomials.size(); ++m) {
    if (monomials[m] == std::make_pair(i, j)) return coeffs(r, static_cast<int>(m));
  }
  throw std::out_of_range("QuadraticGraphFit::coefficient: no such monomial");
}

Eigen::VectorXd QuadraticGraphFit::defect(const Eigen::VectorXd& x) const {
  const Eigen::VectorXd p = s1_frame.transpose() * x;
  const Eigen::VectorXd q = perp_frame.transpose() * x;
  return perp_frame * (q - graph(p));
}

QuadraticGraphFit fit_invariant_graph(const PolyVectorField& f0, const PolyVectorField& f1,
                                      const GraphFitOptions& options) {
  const BracketFiltration filtration = s2_span(f0, f1, options.depth);
  if (!filtration.s2_in_s1 && !options.allow_drift_case) {
    throw std::domain_error(
        "fit_invariant_graph: S2(0) is not contained in S1(0); no invariant graph expected");
  }
  if (options.amplitudes.empty()) throw std::invalid_argument("fit_invariant_graph: no amplitudes");
  QuadraticGraphFit fit = empty_fit(filtration);
  const int n = filtration.dim;
  const int perp = static_cast<int>(fit.perp_frame.cols());
  const int columns = static_cast<int>(fit.monomials.size());

  const CompiledField c0(f0);
  const CompiledField c1(f1);
  // Per amplitude: the sampled (p, q) pairs.
  std::vector<std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>>> groups;
  for (double a : options.amplitudes) {
    EnsembleSpec spec = options.ensemble;
    spec.amplitude = a;
    std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>> group;
    for (const auto& u : generate_ensemble(spec)) {
      const auto rec = integrate_affine(c0, c1, [&u](double t) { return u(t); }, u.horizon(),
                                        Eigen::VectorXd::Zero(n), options.step,
                                        options.sample_every);
      for (size_t i = 1; i < rec.states.size(); ++i) {
        group.emplace_back(fit.s1_frame.transpose() * rec.states[i],
                           fit.perp_frame.transpose() * rec.states[i]);
      }
    }
    fit.samples += static_cast<int>(group.size());
    groups.push_back(std::move(group));
  }

  if (perp > 0 && columns > 0) {
    Eigen::MatrixXd design(fit.samples, columns);
    Eigen::MatrixXd target(fit.samples, perp);
    int row = 0;
    for (size_t g = 0; g < groups.size(); ++g) {
      const double weight = 1.0 / (options.amplitudes[g] * options.amplitudes[g]);
      for (const auto& [p, q] : groups[g]) {
        design.row(row) = weight * monomial_row(fit, p);
        target.row(row) = weight * q.transpose();
        ++row;
      }
    }
    const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    if (qr.rank() < columns) {
      throw RankDeficiencyError("fit_invariant_graph: regression rank " +
                                std::to_string(qr.rank()) + " < " + std::to_string(columns) +
                                " monomials; enrich the ensemble");
    }
    fit.coeffs = qr.solve(target).transpose();
  }

  std::vector<double> log_a;
  std::vector<double> log_r;
  bool all_vanish = true;
  for (size_t g = 0; g < groups.size(); ++g) {
    double num = 0.0;
    double den = 0.0;
    for (const auto& [p, q] : groups[g]) {
      num += (q - fit.graph(p)).squaredNorm();
      den += std::pow(p.squaredNorm(), 2);
    }
    const double r = den > 0.0 ? std::sqrt(num / den) : 0.0;
    fit.amplitudes.push_back(options.amplitudes[g]);
    fit.normalized_residuals.push_back(r);
    if (r > 1e-8) all_vanish = false;
    if (r > 0.0) {
      log_a.push_back(std::log(options.amplitudes[g]));
      log_r.push_back(std::log(r));
    }
  }
  if (all_vanish) {
    fit.decay_exponent = std::numeric_limits<double>::infinity();
    fit.graph_like = true;
  } else {
    double slope = 0.0;
    if (log_a.size() >= 2) {
      const double ma = std::accumulate(log_a.begin(), log_a.end(), 0.0) / log_a.size();
      const double mr = std::accumulate(log_r.begin(), log_r.end(), 0.0) / log_r.size();
      double sxy = 0.0;
      double sxx = 0.0;
      for (size_t i = 0; i < log_a.size(); ++i) {
        sxy += (log_a[i] - ma) * (log_r[i] - mr);
        sxx += (log_a[i] - ma) * (log_a[i] - ma);
      }
      slope = sxx > 0.0 ? sxy / sxx : 0.0;
    }
    fit.decay_exponent = slope;
    fit.graph_like = slope >= 0.5;
  }
  return fit;
}

ManifoldResidual manifold_residual(const TrajectoryRecord& trajectory,
                                   const QuadraticGraphFit& fit) {
  ManifoldResidual out;
  out.times = trajectory.times;
  for (const auto& x : trajectory.states) {
    const double r = fit.defect(x).norm();
    out.residual.push_back(r);
    out.max_residual = std::max(out.max_residual, r);
  }
  if (trajectory.control) {
    out.w13_cubed = std::pow(w_minus1_p_norm(*trajectory.control, 3.0), 3);
    out.ratio = out.w13_cubed > 0.0 ? out.max_residual / out.w13_cubed : 0.0;
  }
  return out;
}

DriftReport drift_experiment(const PolyVectorField& f0, const PolyVectorField& f1,
                             const BracketFiltration& filtration,
                             const QuadraticGraphFit& fit,
                             const std::vector<ControlSignal>& controls,
                             const DriftOptions& options) {
  if (!filtration.bad_index || !filtration.drift_dir) {
    throw std::domain_error("drift_experiment: the system has no bad index");
  }
  DriftReport report;
  report.k = *filtration.bad_index;
  report.direction = to_double(*filtration.drift_dir);
  report.tolerance = options.tolerance;
  report.min_final_pairing = std::numeric_limits<double>::infinity();
  report.min_pairing_w0 = std::numeric_limits<double>::infinity();
  report.min_ratio = std::numeric_limits<double>::infinity();
  const int k = report.k;
  const int n = filtration.dim;
  const CompiledField c0(f0);
  const CompiledField c1(f1);

  for (size_t idx = 0; idx < controls.size(); ++idx) {
    const ControlSignal& u = controls[idx];
    DriftSample s;
    s.index = static_cast<int>(idx);
    try {
      s.norm = sobolev_sup_norm(u, 2 * k - 3);
    } catch (const std::domain_error&) {
      s.norm = std::numeric_limits<double>::infinity();
    }
    const double scale = std::max(1.0, sobolev_sup_norm(u, 0));
    s.w0 = u.vanishing_order(1e-12 * scale) >= 2 * k - 2;
    const auto rec = integrate_affine(c0, c1, [&u](double t) { return u(t); }, u.horizon(),
                                      Eigen::VectorXd::Zero(n), options.step, options.sample_every);
    if (report.times.empty()) report.times = rec.times;
    s.min_pairing = std::numeric_limits<double>::infinity();
    for (const auto& x : rec.states) {
      const double value = fit.defect(x).dot(report.direction);
      s.pairing.push_back(value);
      s.min_pairing = std::min(s.min_pairing, value);
    }
    s.final_pairing = s.pairing.back();
    s.energy = hk_energy(u, k);
    s.ratio = s.energy > 0.0 ? s.final_pairing / s.energy : 0.0;

    report.min_final_pairing = std::min(report.min_final_pairing, s.final_pairing);
    if (s.w0) report.min_pairing_w0 = std::min(report.min_pairing_w0, s.min_pairing);
    if (s.energy > 0.0) report.min_ratio = std::min(report.min_ratio, s.ratio);
    const bool bad = s.final_pairing < -options.tolerance ||
                     (s.w0 && s.min_pairing < -options.tolerance);
    if (bad) ++report.violations;
    report.samples.push_back(std::move(s));
  }
  return report;
}

}  // namespace quadobs
