#include "quadobs/runner.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <limits>
#include <memory>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "quadobs/burgers/kernel.h"
#include "quadobs/burgers/solvers.h"
#include "quadobs/ensemble.h"
#include "quadobs/errors.h"
#include "quadobs/obstruction.h"
#include "quadobs/parser.h"
#include "quadobs/quadrature.h"
#include "quadobs/schrodinger.h"
#include "quadobs/simulate.h"
#include "quadobs/steering.h"
#include "quadobs/studies.h"

namespace quadobs {

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
    : out_(path) {
  if (!out_) throw std::runtime_error("cannot write " + path.string());
  out_ << std::setprecision(17);
  for (size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
  out_ << '\n';
}

std::filesystem::path output_root() {
  const char* env = std::getenv("QUADOBS_OUTPUT_ROOT");
  return env && *env ? std::filesystem::path(env) : std::filesystem::path("quadobs_out");
}

namespace {

struct Context {
  const Scenario& s;
  std::filesystem::path dir;
  std::ostringstream summary;
  std::vector<std::filesystem::path> files;

  CsvWriter csv(const std::string& name, const std::vector<std::string>& header) {
    files.push_back(dir / name);
    return CsvWriter(dir / name, header);
  }
};

struct System {
  int dim = 0;
  PolyVectorField f0, f1;
  int depth = kDefaultBracketDepth;
};

PolyVectorField field_entry(const Scenario& s, const std::string& key, int dim) {
  const auto& e = s.entry("system", key);
  try {
    return parse_vector_field(e.value, dim);
  } catch (const ParseError& err) {
    throw ParseError(key + ": " + err.what(), e.line);
  }
}

System load_system(const Scenario& s) {
  System sys;
  sys.dim = s.integer("system", "dim", 0);
  if (sys.dim < 1) throw ParseError("[system] needs dim >= 1", s.has("system", "dim") ? s.entry("system", "dim").line : 0);
  sys.f0 = field_entry(s, "f0", sys.dim);
  sys.f1 = field_entry(s, "f1", sys.dim);
  sys.depth = s.integer("system", "depth", kDefaultBracketDepth);
  return sys;
}

EnsembleSpec load_ensemble(const Scenario& s) {
  EnsembleSpec spec;
  spec.seed = s.seed();
  if (s.has("ensemble", "family")) {
    try {
      spec.family = parse_family(s.text("ensemble", "family"));
    } catch (const std::exception& e) {
      throw ParseError(e.what(), s.entry("ensemble", "family").line);
    }
  }
  if (s.has("ensemble", "norm")) {
    try {
      spec.norm = parse_amplitude_norm(s.text("ensemble", "norm"));
    } catch (const std::exception& e) {
      throw ParseError(e.what(), s.entry("ensemble", "norm").line);
    }
  }
  spec.count = s.integer("ensemble", "count", spec.count);
  spec.amplitude = s.number("ensemble", "amplitude", spec.amplitude);
  spec.horizon = s.number("ensemble", "horizon", spec.horizon);
  spec.cells = s.integer("ensemble", "cells", spec.cells);
  spec.modes = s.integer("ensemble", "modes", spec.modes);
  spec.vanishing_order = s.integer("ensemble", "vanishing_order", spec.vanishing_order);
  spec.min_fraction = s.number("ensemble", "min_fraction", spec.min_fraction);
  return spec;
}

std::string describe_ensemble(const EnsembleSpec& e) {
  std::ostringstream os;
  os << e.count << " " << family_name(e.family) << " controls on [0, " << e.horizon << "], "
     << amplitude_norm_name(e.norm) << " amplitude <= " << e.amplitude;
  if (e.vanishing_order >= 0) os << ", u^(j)(0) = 0 for j <= " << e.vanishing_order;
  return os.str();
}

Eigen::VectorXd to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

void run_analyze(Context& ctx) {
  const System sys = load_system(ctx.s);
  const LinearPair pair = linearize(sys.f0, sys.f1);
  const int rk = kalman_rank(pair);
  const BracketFiltration filt = s2_span(sys.f0, sys.f1, sys.depth);
  std::ostringstream verdict;
  verdict << "Kalman rank " << rk << "/" << sys.dim << "; ";
  if (rk == sys.dim) {
    verdict << "no bad index; linear test applies";
  } else if (filt.bad_index) {
    const int k = *filt.bad_index;
    verdict << "k=" << k << ", d_" << k << "=" << to_string(*filt.drift_dir) << ", not "
            << obstructed_class(k) << "-STLC (evidence)";
  } else {
    verdict << "no bad index; S2 in S1 up to depth " << filt.depth << ": " << (filt.s2_in_s1 ? "yes" : "no");
  }
  ctx.summary << verdict.str() << "\n\n" << format_filtration_report(filt);
  {
    CsvWriter csv = ctx.csv("s1_basis.csv", {"index", "component", "value"});
    for (size_t i = 0; i < filt.s1_basis.size(); ++i) {
      for (int c = 0; c < sys.dim; ++c) csv.row(i, c, filt.s1_basis[i][c].get_str());
    }
  }
  if (ctx.s.has("checks", "parity_kmax")) {
    const int kmax = ctx.s.integer("checks", "parity_kmax", 2);
    const ParityReport parity = parity_check(sys.f0, sys.f1, sys.depth, kmax);
    CsvWriter csv = ctx.csv("parity.csv", {"k", "dim_odd", "dim_even", "equal"});
    for (const auto& l : parity.levels) csv.row(l.k, l.dim_odd, l.dim_even, l.equal() ? 1 : 0);
    ctx.summary << "parity levels equal up to k=" << kmax << ": " << (parity.all_equal() ? "yes" : "no") << "\n";
  }
  if (ctx.s.has("checks", "bracket_fields")) {
    const auto st = bracket_algebra_study(ctx.s.integer("checks", "bracket_fields", 100), ctx.s.seed());
    ctx.summary << "bracket algebra on " << st.fields << " random triples: antisymmetry failures "
                << st.antisymmetry_failures << ", Jacobi failures " << st.jacobi_failures
                << ", max finite-difference error " << st.max_fd_error << " over " << st.fd_points << " points\n";
    CsvWriter csv = ctx.csv("bracket_algebra.csv",
                            {"fields", "antisymmetry_failures", "jacobi_failures", "fd_points", "max_fd_error"});
    csv.row(st.fields, st.antisymmetry_failures, st.jacobi_failures, st.fd_points, st.max_fd_error);
  }
  if (ctx.s.has("checks", "linear_systems")) {
    const auto st = kalman_consistency_study(ctx.s.integer("checks", "linear_systems", 50), ctx.s.seed());
    ctx.summary << "Kalman span versus S1 span on " << st.systems << " random linear systems: " << st.mismatches
                << " mismatches (" << st.rank_deficient << " rank-deficient systems)\n";
    CsvWriter csv = ctx.csv("kalman_consistency.csv", {"systems", "mismatches", "rank_deficient"});
    csv.row(st.systems, st.mismatches, st.rank_deficient);
  }
}

void run_steer(Context& ctx) {
  const System sys = load_system(ctx.s);
  const double horizon = ctx.s.number("steer", "horizon", 1.0);
  const std::vector<double> x0 = ctx.s.numbers("steer", "x0");
  if (static_cast<int>(x0.size()) != sys.dim) {
    throw ParseError("x0 has " + std::to_string(x0.size()) + " entries, expected " + std::to_string(sys.dim),
                     ctx.s.entry("steer", "x0").line);
  }
  SteeringOptions opts;
  opts.grid = ctx.s.integer("steer", "grid", opts.grid);
  opts.sim_steps = ctx.s.integer("steer", "sim_steps", opts.sim_steps);
  const std::string method = ctx.s.text("steer", "method", "linear");
  SteeringControl control;
  if (method == "linear") {
    control = gramian_steer(linearize(sys.f0, sys.f1), to_vector(x0), horizon, opts);
  } else if (method == "nonlinear") {
    control = nonlinear_steer(sys.f0, sys.f1, to_vector(x0), horizon, ctx.s.integer("steer", "iterations", 20),
                              ctx.s.number("steer", "tolerance", 1e-12), opts);
  } else {
    throw ParseError("method must be linear or nonlinear", ctx.s.entry("steer", "method").line);
  }
  ctx.summary << std::setprecision(12) << method << " steering to 0 at T = " << horizon << ": residual |x(T)| = "
              << control.residual << " after " << control.iterations << " iteration(s)\n";
  ctx.summary << "Gramian W_T:\n" << control.gramian << "\n";
  CsvWriter csv = ctx.csv("control.csv", {"t", "u"});
  for (size_t i = 0; i < control.times.size(); ++i) csv.row(control.times[i], control.samples[i]);
  if (!control.residual_history.empty()) {
    CsvWriter hist = ctx.csv("residual_history.csv", {"iteration", "residual"});
    for (size_t i = 0; i < control.residual_history.size(); ++i) hist.row(i, control.residual_history[i]);
  }
}

void run_drift(Context& ctx) {
  const System sys = load_system(ctx.s);
  const BracketFiltration filt = s2_span(sys.f0, sys.f1, sys.depth);
  if (!filt.bad_index) throw std::domain_error("drift: the system has no bad index; nothing to measure");
  const EnsembleSpec spec = load_ensemble(ctx.s);
  DriftOptions opts;
  opts.step = ctx.s.number("drift", "step", opts.step);
  opts.sample_every = ctx.s.integer("drift", "sample_every", opts.sample_every);
  opts.tolerance = ctx.s.number("drift", "tolerance", opts.tolerance);
  const std::string graph = ctx.s.text("drift", "graph", "zero");
  QuadraticGraphFit fit = QuadraticGraphFit::Zero(filt);
  if (graph == "fit") {
    GraphFitOptions fo;
    fo.ensemble = spec;
    fo.ensemble.count = std::min(spec.count, 50);
    fo.allow_drift_case = true;
    fo.depth = sys.depth;
    fit = fit_invariant_graph(sys.f0, sys.f1, fo);
  } else if (graph != "zero") {
    throw ParseError("graph must be zero or fit", ctx.s.entry("drift", "graph").line);
  }
  const auto controls = generate_ensemble(spec);
  const DriftReport r = drift_experiment(sys.f0, sys.f1, filt, fit, controls, opts);
  ctx.summary << std::setprecision(10) << "k=" << r.k << ", d_" << r.k << "=" << to_string(*filt.drift_dir)
              << ", graph " << graph << "\n"
              << describe_ensemble(spec) << "\n"
              << "violations (pairing < -" << r.tolerance << "): " << r.violations << "/" << r.samples.size() << "\n"
              << "min final pairing: " << r.min_final_pairing << "\n"
              << "min pairing over sample times (vanishing controls): ";
  if (std::isfinite(r.min_pairing_w0)) {
    ctx.summary << r.min_pairing_w0 << "\n";
  } else {
    ctx.summary << "n/a (no control satisfies the vanishing conditions)\n";
  }
  ctx.summary
              << "min final pairing / int u_k^2: " << r.min_ratio << "\n";
  CsvWriter csv = ctx.csv("drift.csv", {"index", "norm", "w0", "final_pairing", "min_pairing", "energy", "ratio"});
  for (const auto& d : r.samples) csv.row(d.index, d.norm, d.w0 ? 1 : 0, d.final_pairing, d.min_pairing, d.energy, d.ratio);
}

void run_manifold(Context& ctx) {
  const System sys = load_system(ctx.s);
  const EnsembleSpec spec = load_ensemble(ctx.s);
  GraphFitOptions fo;
  fo.ensemble = spec;
  fo.amplitudes = ctx.s.numbers("fit", "amplitudes", fo.amplitudes);
  fo.step = ctx.s.number("fit", "step", fo.step);
  fo.sample_every = ctx.s.integer("fit", "sample_every", fo.sample_every);
  fo.depth = sys.depth;
  const BracketFiltration filt = s2_span(sys.f0, sys.f1, sys.depth);
  ctx.summary << "S2 in S1 (depth " << filt.depth << "): " << (filt.s2_in_s1 ? "yes" : "no") << "\n";
  const QuadraticGraphFit fit = fit_invariant_graph(sys.f0, sys.f1, fo);
  {
    CsvWriter csv = ctx.csv("graph_coefficients.csv", {"perp", "i", "j", "coefficient"});
    for (int r = 0; r < fit.coeffs.rows(); ++r) {
      for (const auto& [i, j] : fit.monomials) {
        csv.row(r, i, j, fit.coefficient(r, i, j));
        ctx.summary << "G_" << r << " coefficient of p" << i << " p" << j << ": " << fit.coefficient(r, i, j) << "\n";
      }
    }
  }
  ctx.summary << std::setprecision(10) << "graph fit over " << fit.samples << " samples; decay exponent "
              << fit.decay_exponent << "; graph-like: " << (fit.graph_like ? "yes" : "no") << "\n";
  double worst = 0.0;
  CsvWriter csv = ctx.csv("manifold_residual.csv", {"index", "max_residual", "w13_cubed", "ratio"});
  const auto controls = generate_ensemble(spec);
  for (size_t i = 0; i < controls.size(); ++i) {
    const TrajectoryRecord traj =
        integrate_affine(sys.f0, sys.f1, controls[i], Eigen::VectorXd::Zero(sys.dim), fo.step, fo.sample_every);
    const ManifoldResidual m = manifold_residual(traj, fit);
    worst = std::max(worst, m.max_residual);
    csv.row(i, m.max_residual, m.w13_cubed, m.ratio);
  }
  ctx.summary << describe_ensemble(spec) << "\nmax manifold residual: " << worst << "\n";
}

/// Sign-calibrated rho for the given viscosity.
burgers::RhoCalibration calibrated_rho(Context& ctx, double eps, int modes) {
  burgers::RhoCalibration cal = burgers::calibrate_rho(eps, modes);
  ctx.summary << "rho = " << (cal.flipped ? "-" : "") << "sqrt(2) sin(2 pi x) (probe form " << cal.probe_form
              << " at eps " << eps << ")\n";
  return cal;
}

void run_burgers_kernel(Context& ctx) {
  const Scenario& s = ctx.s;
  const std::string mode = s.text("burgers", "mode", "coercivity");
  const std::vector<double> eps_list = s.numbers("burgers", "eps", {1e-2, 1e-3, 1e-4});
  EnsembleSpec spec = load_ensemble(s);
  ctx.summary << std::setprecision(10);
  if (mode == "duality") {
    const double eps = eps_list.front();
    const int modes = s.integer("burgers", "modes", 256);
    const auto cal = calibrated_rho(ctx, eps, modes);
    const burgers::KernelEpsEvaluator k(eps, cal.rho, modes);
    const auto controls = generate_ensemble(spec);
    CsvWriter csv = ctx.csv("duality.csv", {"index", "quad_form", "projection", "relative_error"});
    double worst = 0.0;
    for (size_t i = 0; i < controls.size(); ++i) {
      const double form = kernel_quadratic_form([&k](double a, double b) { return k(a, b); },
                                                partition_signal(controls[i], s.integer("burgers", "min_cells", 32)));
      const auto z = burgers::second_order_solve(burgers::linearized_solve(controls[i], eps, modes));
      const double proj = z.path.final_state().inner(cal.rho);
      const double rel = std::abs(form - proj) / std::max(std::abs(proj), std::numeric_limits<double>::min());
      worst = std::max(worst, rel);
      csv.row(i, form, proj, rel);
    }
    ctx.summary << "duality <K u, u> versus int z(1) rho at eps " << eps << ", M = " << modes << ": max relative error "
                << worst << " over " << controls.size() << " controls\n";
  } else if (mode == "k0") {
    const auto controls = generate_ensemble(spec);
    const burgers::KernelMatrix k0 = burgers::kernel_K0(s.integer("burgers", "nodes", 129));
    CsvWriter csv = ctx.csv("k0_forms.csv", {"index", "direct", "by_parts", "relative_gap"});
    double worst = 0.0, lowest = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < controls.size(); ++i) {
      const auto c = burgers::k0_form_check(controls[i]);
      quad_form(k0, controls[i]);  // throws on disagreement
      worst = std::max(worst, c.relative_gap);
      lowest = std::min(lowest, c.direct);
      csv.row(i, c.direct, c.by_parts, c.relative_gap);
    }
    const ControlSignal ramp(PiecewisePolynomial(1.0, {{0.0, 1.0}}));
    ctx.summary << "K0 forms on " << controls.size() << " controls: max relative gap " << worst
                << ", min form " << lowest << "\n"
                << "H^{-1/4} energy of U(s) = s: " << frac_neg_quarter_norm_sq(ramp) << " (16/21 = " << 16.0 / 21.0
                << ")\n";
  } else if (mode == "coercivity") {
    burgers::CoercivityOptions opts;
    opts.eps_list = eps_list;
    opts.matrix_nodes = s.integer("burgers", "nodes", opts.matrix_nodes);
    opts.matrix_modes = s.integer("burgers", "modes", opts.matrix_modes);
    opts.pointwise_modes = s.integer("burgers", "pointwise_modes", opts.pointwise_modes);
    const auto cal = calibrated_rho(ctx, eps_list.front(), opts.matrix_modes);
    const auto controls = spec.count > 0 ? generate_ensemble(spec) : std::vector<ControlSignal>{};
    const auto report = burgers::coercivity_study(cal.rho, controls, opts);
    CsvWriter probes = ctx.csv("probes.csv", {"eps", "s1", "s2", "ratio"});
    CsvWriter ratios = ctx.csv("coercivity.csv", {"eps", "index", "ratio"});
    for (const auto& row : report.rows) {
      for (size_t p = 0; p < opts.probes.size(); ++p) {
        probes.row(row.eps, opts.probes[p].first, opts.probes[p].second, row.probe_ratios[p]);
      }
      for (size_t i = 0; i < row.ratios.size(); ++i) ratios.row(row.eps, i, row.ratios[i]);
      ctx.summary << "eps " << row.eps << ": probe ratio mean " << row.probe_mean << ", spread " << row.probe_spread;
      if (!row.ratios.empty()) ctx.summary << ", min coercivity ratio " << row.min_ratio << " over " << row.ratios.size();
      ctx.summary << "\n";
    }
    ctx.summary << "measured proportionality constant c(rho) = " << report.constant << "\n";
  } else if (mode == "wsio") {
    burgers::WsioOptions opts;
    opts.delta = s.number("burgers", "delta", opts.delta);
    opts.samples = s.integer("burgers", "samples", opts.samples);
    opts.seed = s.seed();
    const int groups = s.integer("burgers", "ensembles", 2);
    std::vector<std::vector<ControlSignal>> ensembles;
    for (int g = 0; g < groups; ++g) {
      EnsembleSpec e = spec;
      e.seed = spec.seed + 1000 * g;
      ensembles.push_back(generate_ensemble(e));
    }
    const std::string kernel = s.text("burgers", "kernel", "abs_sqrt");
    burgers::WsioReport report;
    if (kernel == "abs_sqrt") {
      report = burgers::wsio_bound([](double t, double u) { return 1.0 / std::sqrt(std::abs(t - u)); }, ensembles, opts);
    } else if (kernel == "one") {
      report = burgers::wsio_bound([](double, double) { return 1.0; }, ensembles, opts);
    } else if (kernel == "residual") {
      const double eps = eps_list.front();
      const int modes = s.integer("burgers", "modes", 2048);
      const int nodes = s.integer("burgers", "nodes", 257);
      const auto cal = calibrated_rho(ctx, eps, modes);
      burgers::CoercivityOptions co;
      co.eps_list = {1e-4};
      const double c = burgers::coercivity_study(cal.rho, {}, co).constant;
      const auto k = std::make_shared<burgers::KernelEpsEvaluator>(eps, cal.rho, modes);
      const double w = c * std::sqrt(eps);
      opts.min_separation = 40.0 / (eps * std::numbers::pi * std::numbers::pi * modes * modes);
      const burgers::KernelMatrix r = burgers::kernel_residual(burgers::kernel_K_eps(eps, cal.rho, nodes, modes), c);
      burgers::QuadFormOptions matrix_route;
      matrix_route.route = burgers::QuadFormOptions::Route::kMatrix;
      // Ensembles hold controls u; the lemma is applied to U, the primitive.
      for (auto& e : ensembles) {
        for (auto& u : e) u = u.primitive();
      }
      report = burgers::wsio_bound(
          [k, w](double t, double u) { return k->mixed_derivative(t, u) - w * burgers::kernel_K0_mixed(t, u); },
          ensembles, opts,
          [&](const ControlSignal& big_u) { return quad_form(r, big_u.derivative(), matrix_route); });
      ctx.summary << "residual kernel R = K_eps - c sqrt(eps) K0 with c = " << c << ", eps = " << eps
                  << ", pairs sampled at separation >= " << opts.min_separation << "\n"
                  << "kappa / eps^{3/2} = " << report.kappa / std::pow(eps, 1.5) << "\n";
    } else {
      throw ParseError("kernel must be abs_sqrt, one or residual", s.entry("burgers", "kernel").line);
    }
    ctx.summary << "kappa1 " << report.kappa1 << ", kappa2 " << report.kappa2 << ", kappa3 " << report.kappa3
                << " (delta " << opts.delta << ", " << opts.samples << " triples): " << report.verdict << "\n"
                << "empirical C " << report.empirical_constant << ", spread across " << groups << " ensembles "
                << report.constant_spread << "\n";
    CsvWriter bands = ctx.csv("wsio_bands.csv", {"separation_hi", "separation_lo", "kappa"});
    for (size_t b = 0; b < report.band_kappa.size(); ++b) {
      bands.row(report.band_edges[b], report.band_edges[b + 1], report.band_kappa[b]);
    }
    CsvWriter consts = ctx.csv("wsio_constants.csv", {"ensemble", "constant"});
    for (size_t g = 0; g < report.ensemble_constants.size(); ++g) consts.row(g, report.ensemble_constants[g]);
  } else {
    throw ParseError("mode must be duality, k0, coercivity or wsio", s.entry("burgers", "mode").line);
  }
}

void run_burgers_drift(Context& ctx) {
  const Scenario& s = ctx.s;
  const double eps = s.number("burgers", "eps", 1e-3);
  burgers::DriftDemoOptions opts;
  opts.modes = s.integer("burgers", "modes", opts.modes);
  opts.dt = s.number("burgers", "dt", opts.dt);
  const double delta = s.number("burgers", "initial_delta", 1e-3);
  const EnsembleSpec spec = load_ensemble(s);
  ctx.summary << std::setprecision(10);
  const auto cal = calibrated_rho(ctx, eps, opts.modes);
  const auto controls = generate_ensemble(spec);
  const auto zero = burgers::drift_demo(cal.rho, eps, controls, burgers::SineSpectrum::Zero(opts.modes), opts);
  const burgers::SineSpectrum psi0 = burgers::sign_aligned_initial(cal.rho, delta);
  const auto lifted = burgers::drift_demo(cal.rho, eps, controls, psi0, opts);
  CsvWriter csv = ctx.csv("drift_projection.csv", {"index", "projection_zero_start", "projection_polynomial_start"});
  for (size_t i = 0; i < controls.size(); ++i) csv.row(i, zero.projections[i], lifted.projections[i]);
  ctx.summary << describe_ensemble(spec) << "\n"
              << "psi0 = 0: consistent sign fraction " << zero.consistent_fraction << " (positive "
              << zero.positive_fraction << "), projections in [" << zero.min_projection << ", " << zero.max_projection
              << "]\n"
              << "psi0 = sign-aligned x(1-x)(1-2x) of size " << delta << " (projection " << psi0.inner(cal.rho)
              << "): min projection at t = 1 " << lifted.min_projection << "\n"
              << "CFL substeps: " << zero.cfl_substeps + lifted.cfl_substeps << "\n";
}

void run_schrodinger(Context& ctx) {
  const Scenario& s = ctx.s;
  const int kmax = s.integer("schrodinger", "kmax", 10);
  DipoleMoment mu = DipoleMoment::Polynomial({0.0, 1.0});
  if (s.has("schrodinger", "mu") && s.has("schrodinger", "samples")) {
    throw ParseError("give either mu or samples", s.entry("schrodinger", "samples").line);
  }
  if (s.has("schrodinger", "samples")) {
    mu = DipoleMoment::Sampled(s.numbers("schrodinger", "samples"));
  } else if (s.has("schrodinger", "mu")) {
    std::vector<double> c = s.numbers("schrodinger", "mu");
    if (s.has("schrodinger", "cancel_k")) {
      // Add a x with a chosen so the moment at cancel_k vanishes.
      const int k = s.integer("schrodinger", "cancel_k", 2);
      const double a = -moment_coeff(DipoleMoment::Polynomial(c), k) / moment_coeff(DipoleMoment::Polynomial({0.0, 1.0}), k);
      if (c.size() < 2) c.resize(2, 0.0);
      c[1] += a;
      ctx.summary << "added " << std::setprecision(17) << a << " x to cancel the moment at k = " << k << "\n";
    }
    mu = DipoleMoment::Polynomial(c);
  }
  const MomentReport report = classify(mu, kmax);
  ctx.summary << std::setprecision(12) << "mu = " << mu.describe() << "\n";
  for (size_t i = 0; i < report.k.size(); ++i) {
    ctx.summary << "k=" << report.k[i] << ": moment " << report.moments[i] << ", alpha " << report.alphas[i] << ", "
                << direction_class_name(report.classes[i]) << "\n";
  }
  ctx.summary << "richness margin min k^3 |moment| = " << report.richness_margin << "\n";
  ctx.files.push_back(ctx.dir / "moments.csv");
  std::ofstream out(ctx.dir / "moments.csv");
  report.write_csv(out);
}

}  // namespace

RunOutcome run_scenario(const Scenario& scenario, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  Context ctx{scenario, out_dir, {}, {}};
  const std::string kind = scenario.kind();
  if (kind == "analyze") {
    run_analyze(ctx);
  } else if (kind == "steer") {
    run_steer(ctx);
  } else if (kind == "drift") {
    run_drift(ctx);
  } else if (kind == "manifold") {
    run_manifold(ctx);
  } else if (kind == "burgers-kernel") {
    run_burgers_kernel(ctx);
  } else if (kind == "burgers-drift") {
    run_burgers_drift(ctx);
  } else if (kind == "schrodinger") {
    run_schrodinger(ctx);
  } else {
    throw std::invalid_argument("unknown scenario kind " + kind);
  }
  RunOutcome outcome;
  std::ostringstream header;
  header << "scenario: " << scenario.origin << "\nkind: " << kind << "\nseed: " << scenario.seed()
         << " (mt19937_64)\n";
  if (scenario.has("", "description")) header << "description: " << scenario.text("", "description") << "\n";
  outcome.summary = header.str() + "\n" + ctx.summary.str();
  {
    std::ofstream out(out_dir / "summary.txt");
    out << outcome.summary;
  }
  outcome.files = ctx.files;
  outcome.files.push_back(out_dir / "summary.txt");
  return outcome;
}

}  // namespace quadobs
