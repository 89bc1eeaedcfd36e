// Command line harness around the coupled kicked-top library: entropy
// evolution, growth rates, asymptotic sweeps, eigenvector entanglement,
// classical Lyapunov exponents, ensemble moment checks and a quick
// self-verification suite.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "kicktop/classical.hpp"
#include "kicktop/correlations.hpp"
#include "kicktop/entanglement.hpp"
#include "kicktop/errors.hpp"
#include "kicktop/experiments.hpp"
#include "kicktop/io.hpp"
#include "kicktop/moments.hpp"
#include "kicktop/spectral.hpp"
#include "kicktop/spectrum_cache.hpp"

namespace fs = std::filesystem;
using namespace kicktop;

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out_dir;
  std::string ensemble;
  std::vector<double> k_values;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int threads = 0;
  bool threads_set = false;
  long kicks = 0;
  bool kicks_set = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--config", opts.config_path, "key=value config file");
  cmd->add_option("--out", opts.out_dir, "output directory");
  cmd->add_option("--ensemble", opts.ensemble, "initial-state ensemble (su2 or sud)");
  cmd->add_option("--k", opts.k_values, "kick strengths (overrides config k_list)");
  cmd->add_option("--seed", opts.seed, "master RNG seed")->each([&](const std::string&) {
    opts.seed_set = true;
  });
  cmd->add_option("--threads", opts.threads, "worker threads (0 = hardware)")
      ->each([&](const std::string&) { opts.threads_set = true; });
  cmd->add_option("--kicks", opts.kicks, "evolution length in kicks")
      ->each([&](const std::string&) { opts.kicks_set = true; });
}

ExperimentConfig make_config(const CommonOpts& opts) {
  ExperimentConfig cfg;
  if (!opts.config_path.empty()) cfg = ExperimentConfig::from_file(opts.config_path);
  if (!opts.out_dir.empty()) cfg.output_dir = opts.out_dir;
  if (!opts.ensemble.empty()) cfg.ensemble = parse_ensemble(opts.ensemble);
  if (!opts.k_values.empty()) cfg.k_list = opts.k_values;
  if (opts.seed_set) cfg.seed = opts.seed;
  if (opts.threads_set) cfg.threads = opts.threads;
  if (opts.kicks_set) cfg.kicks = opts.kicks;
  cfg.validate();
  return cfg;
}

int cmd_evolve(const CommonOpts& opts) {
  const ExperimentConfig cfg = make_config(opts);
  const auto traces = run_evolution_experiment(cfg);
  for (const auto& trace : traces)
    std::printf("k=%-6g %s  S(0)=%.3g  S(%zu)=%.6g\n", trace.k, ensemble_name(trace.ensemble),
                trace.mean.front(), trace.mean.size() - 1, trace.mean.back());
  std::printf("wrote %zu trace files to %s\n", traces.size(), cfg.output_dir.c_str());
  return 0;
}

int cmd_rates(const CommonOpts& opts) {
  ExperimentConfig cfg = make_config(opts);
  if (opts.kicks_set) cfg.fit_window = static_cast<int>(opts.kicks);
  const auto rows = run_rate_experiment(cfg);

  // Correlation tables (and the weak-coupling prediction) per kick strength.
  std::vector<fs::path> files{fs::path(cfg.output_dir) / "rates.csv"};
  for (double k : cfg.k_list) {
    const CoupledParams params = cfg.coupled(k);
    for (auto mode : {AveragingMode::su2_ensemble, AveragingMode::sud_ensemble}) {
      const CorrelationTable table =
          correlation_table(params, mode, cfg.count, cfg.seed, cfg.fit_window);
      const char* name = mode == AveragingMode::su2_ensemble ? "su2" : "sud";
      const fs::path path =
          fs::path(cfg.output_dir) / ("correlations_k" + fmt_short(k) + "_" + name + ".csv");
      write_correlation_csv(path, cfg, table);
      files.push_back(path);
      const double pert = perturbative_entropy(params, table, cfg.fit_window) /
                          static_cast<double>(cfg.fit_window);
      std::printf("k=%-6g %s  perturbative slope %.4g per kick\n", k, name, pert);
    }
  }
  write_manifest(cfg, files);

  std::printf("strong-chaos rate %.6g per kick\n", strong_chaos_rate(cfg.coupled(0.0)));
  for (const auto& row : rows)
    std::printf("k=%-6g %s  slope=%.6g  r2=%.4f%s\n", row.k, ensemble_name(row.ensemble),
                row.fit.slope, row.fit.r2, row.fit.degenerate ? "  (degenerate)" : "");
  return 0;
}

int cmd_asymptotic(const CommonOpts& opts) {
  const ExperimentConfig cfg = make_config(opts);
  const auto rows = run_asymptotic_sweep(cfg);
  std::printf("%-8s %-12s %-12s %-12s %-12s %s\n", "k", "eigen_mean", "bound", "su2", "sud",
              "min_gap");
  for (const auto& row : rows)
    std::printf("%-8g %-12.6g %-12.6g %-12.6g %-12.6g %.3g%s\n", row.k, row.mean_eigen_entropy,
                row.lower_bound, row.measured_su2, row.measured_sud, row.min_gap,
                row.degenerate ? "  (degenerate)" : "");
  if (!cfg.j_list.empty()) {
    const auto scaling = run_scaling_experiment(cfg);
    std::printf("scaling: %zu rows written\n", scaling.size());
  }
  std::printf("statistical limit at (j1, j2): %.6f\n",
              statistical_limit(SpinQuantum(cfg.j1).dim(), SpinQuantum(cfg.j2).dim()));
  return 0;
}

int cmd_eigen(const CommonOpts& opts) {
  const ExperimentConfig cfg = make_config(opts);
  const fs::path dir = cfg.output_dir;
  const fs::path cache_dir = dir / "cache";
  std::ostringstream ss;
  ss << "# version " << kVersion << "\n# config_hash " << cfg.hash() << "\n";
  ss << "k,mean_eigen_entropy,lower_bound,min_gap,degenerate\n";
  std::vector<fs::path> files;
  for (double k : cfg.k_list) {
    const CoupledParams params = cfg.coupled(k);
    SpectrumSummary summary;
    if (auto cached = load_spectrum_cache(cache_dir, params)) {
      summary = *cached;
    } else {
      const FloquetOperator op = FloquetOperator::build(params);
      summary = summarize(diagonalize(op, cfg.diag_cap));
      store_spectrum_cache(cache_dir, params, summary);
    }
    files.push_back(spectrum_cache_path(cache_dir, params));
    const bool degen = summary.min_gap < 1e-10;
    const double mean = summary.mean_entropy();
    const double bound = degen ? std::nan("") : 2.0 * mean - 1.0;
    ss << fmt_short(k) << ',' << fmt_full(mean) << ',' << fmt_full(bound) << ','
       << fmt_full(summary.min_gap) << ',' << (degen ? 1 : 0) << "\n";
    std::printf("k=%-6g eigen_mean=%.6g bound=%.6g min_gap=%.3g%s\n", k, mean, bound,
                summary.min_gap, degen ? " (degenerate)" : "");
  }
  const fs::path path = dir / "eigen.csv";
  write_file_atomic(path, ss.str());
  files.push_back(path);
  write_manifest(cfg, files);
  return 0;
}

int cmd_classical(const CommonOpts& opts, int n_points, int n_steps) {
  const ExperimentConfig cfg = make_config(opts);
  std::ostringstream ss;
  ss << "# version " << kVersion << "\n# config_hash " << cfg.hash() << "\n";
  ss << "k,lyapunov,stderr,n_points,n_steps\n";
  for (double k : cfg.k_list) {
    const LyapunovEstimate est = lyapunov_exponent(k, n_points, n_steps, cfg.seed);
    ss << fmt_short(k) << ',' << fmt_full(est.lambda) << ',' << fmt_full(est.stderr_mean) << ','
       << est.n_points << ',' << est.n_steps << "\n";
    std::printf("k=%-6g lambda=%.6g +- %.2g\n", k, est.lambda, est.stderr_mean);
  }
  const fs::path path = fs::path(cfg.output_dir) / "classical.csv";
  write_file_atomic(path, ss.str());
  write_manifest(cfg, {path});
  return 0;
}

int cmd_moments(const CommonOpts& opts, std::vector<double> j_values, long samples) {
  const ExperimentConfig cfg = make_config(opts);
  if (j_values.empty()) j_values = {0.5, 1.0, 5.0};
  std::ostringstream ss;
  ss << "# version " << kVersion << "\n# config_hash " << cfg.hash() << "\n";
  ss << "kind,j,analytic,mc_mean,mc_stderr,samples,pass\n";
  bool all_pass = true;
  for (double j : j_values) {
    for (MomentKind kind : {MomentKind::su2_jz2, MomentKind::su2_jz_sq, MomentKind::sud_jz2,
                            MomentKind::sud_jz_sq}) {
      const MomentResult res = monte_carlo_moment(kind, j, samples, cfg.seed);
      const bool pass = std::abs(res.mc_mean - res.analytic) <= 3.0 * res.mc_stderr;
      all_pass = all_pass && pass;
      ss << moment_kind_name(kind) << ',' << fmt_short(j) << ',' << fmt_full(res.analytic)
         << ',' << fmt_full(res.mc_mean) << ',' << fmt_full(res.mc_stderr) << ',' << res.samples
         << ',' << (pass ? 1 : 0) << "\n";
      std::printf("%-10s j=%-4g analytic=%.6g mc=%.6g +- %.2g %s\n",
                  std::string(moment_kind_name(kind)).c_str(), j, res.analytic, res.mc_mean,
                  res.mc_stderr, pass ? "ok" : "FAIL");
    }
    // Quadrature checks of the Haar marginals ride along with stderr 0.
    const MarginalMoments mm = marginal_integrals(j);
    const bool p1 = std::abs(mm.x4_quadrature - mm.x4_analytic) <= 1e-8 * mm.x4_analytic;
    const bool p2 = std::abs(mm.x2y2_quadrature - mm.x2y2_analytic) <= 1e-8 * mm.x2y2_analytic;
    all_pass = all_pass && p1 && p2;
    ss << "P1_x4," << fmt_short(j) << ',' << fmt_full(mm.x4_analytic) << ','
       << fmt_full(mm.x4_quadrature) << ",0,0," << (p1 ? 1 : 0) << "\n";
    ss << "P2_x2y2," << fmt_short(j) << ',' << fmt_full(mm.x2y2_analytic) << ','
       << fmt_full(mm.x2y2_quadrature) << ",0,0," << (p2 ? 1 : 0) << "\n";
  }
  const fs::path path = fs::path(cfg.output_dir) / "moments.csv";
  write_file_atomic(path, ss.str());
  write_manifest(cfg, {path});
  std::printf("%s\n", all_pass ? "all moment checks passed" : "some moment checks FAILED");
  return all_pass ? 0 : 1;
}

// Fast smoke checks over every module; exit code counts failures.
int cmd_verify(const CommonOpts& opts) {
  const std::uint64_t seed = opts.seed_set ? opts.seed : 1;
  int failures = 0;
  const auto check = [&](const char* name, bool ok) {
    std::printf("[%s] %s\n", ok ? " ok " : "FAIL", name);
    if (!ok) ++failures;
  };

  {
    const SpinOperators ops = build_spin_operators(SpinQuantum(19.5));
    check("Tr(Jz^2) = d j(j+1)/3 at j=19.5",
          std::abs(ops.jz.squaredNorm() - 5330.0) < 1e-9);
    const Eigen::MatrixXcd comm = ops.jx * ops.jy - ops.jy * ops.jx;
    check("[Jx, Jy] = i Jz at j=19.5",
          (comm - std::complex<double>(0, 1) * ops.jz).norm() < 1e-10);
    const Eigen::MatrixXcd r = rotation_about_y(ops, 0.5 * std::numbers::pi);
    check("rotation unitary",
          (r.adjoint() * r - Eigen::MatrixXcd::Identity(40, 40)).norm() < 1e-12);
    check("rotation conjugation sends Jz to -Jx",
          (r.adjoint() * ops.jz * r + ops.jx).norm() < 1e-10);
  }
  {
    RandomStream rng(seed);
    const SpinQuantum spin(7.5);
    const SpinOperators ops = build_spin_operators(spin);
    bool aligned = true;
    for (int t = 0; t < 20; ++t) {
      const SphericalAngles dir = random_direction(rng);
      const PureState psi = coherent_state(spin, dir);
      const double jz = psi.amp.dot(ops.jz * psi.amp).real();
      const double jx = psi.amp.dot(ops.jx * psi.amp).real();
      const double jy = psi.amp.dot(ops.jy * psi.amp).real();
      aligned = aligned && std::abs(jz - spin.j() * std::cos(dir.theta)) < 1e-9 &&
                std::abs(jx - spin.j() * std::sin(dir.theta) * std::cos(dir.phi)) < 1e-9 &&
                std::abs(jy - spin.j() * std::sin(dir.theta) * std::sin(dir.phi)) < 1e-9;
    }
    check("coherent states point along their direction", aligned);
  }
  {
    check("statistical limit (40, 41)",
          std::abs(statistical_limit(40, 41) - (1.0 - 81.0 / 1641.0)) < 1e-15);
    PureState bell;
    bell.amp.resize(4);
    bell.amp << 1.0 / std::sqrt(2.0), 0.0, 0.0, 1.0 / std::sqrt(2.0);
    check("Bell state linear entropy 1/2",
          std::abs(linear_entropy_of_state(bell, 2, 2) - 0.5) < 1e-14);
    check("Bell state von Neumann entropy 1 bit",
          std::abs(von_neumann_entropy(partial_trace_second(bell, 2, 2)) - 1.0) < 1e-12);
  }
  {
    ExperimentConfig cfg;
    cfg.j1 = 1.0;
    cfg.j2 = 1.5;
    cfg.epsilon = 0.1;
    const CoupledParams params = cfg.coupled(3.0);
    const FloquetOperator op = FloquetOperator::build(params);
    RandomStream rng(seed);
    PureState psi = sample_haar_state(12, rng);
    const PureState direct = op.evolve(psi, 200);
    const Spectrum spec = diagonalize(op);
    const PureState spectral = evolve_by_spectrum(spec, psi, 200);
    check("direct and spectral evolution agree", (direct.amp - spectral.amp).norm() < 1e-9);
    check("spectrum nondegenerate at test point", !spec.degenerate());
    const EigenEntanglementReport rep = eigenvector_entanglement(spec);
    const double s_inf = asymptotic_entropy(spec, psi);
    check("closed-form asymptotic entropy above the eigenvector bound",
          s_inf >= asymptotic_lower_bound(rep) - 1e-9);
    Evolver ev(op, psi);
    ev.advance(10000);
    check("norm preserved over 1e4 kicks", std::abs(ev.norm() - 1.0) < 1e-11);
  }
  {
    RandomStream rng(seed + 1);
    double worst = 0.0;
    for (int t = 0; t < 2000; ++t) {
      const PureState a = sample_haar_state(12, rng);
      const PureState b = sample_haar_state(12, rng);
      const InequalityMargins m = check_cross_inequalities(a, b, 3, 4);
      worst = std::min({worst, m.cross_margin, m.product_margin});
    }
    check("pair trace inequalities hold on random states", worst >= -1e-12);
  }
  {
    ExperimentConfig cfg;
    const CoupledParams params = cfg.coupled(6.0);
    check("strong-chaos rate arithmetic",
          std::abs(strong_chaos_rate(params) - (2.0 / 9.0) * 1e-4 * 19.5 * 20.0) < 1e-18);
    HeisenbergZ hz(params.top1);
    PureState up;
    up.amp = Eigen::VectorXcd::Zero(params.top1.spin.dim());
    up.amp(0) = 1.0;
    check("Jz eigenstate has zero equal-time covariance",
          std::abs(correlation(hz, up, 0, 0)) < 1e-12);
  }
  {
    ClassicalState s(0.3, -0.5, 0.81);
    ClassicalState t = s;
    for (int i = 0; i < 4; ++i) t = classical_step(t, 0.0);
    check("classical map has period 4 at k=0", std::abs(t.x - s.x) < 1e-12 &&
                                                   std::abs(t.y - s.y) < 1e-12 &&
                                                   std::abs(t.z - s.z) < 1e-12);
    const LyapunovEstimate reg = lyapunov_exponent(0.01, 20, 2000, seed);
    const LyapunovEstimate chaos = lyapunov_exponent(6.0, 20, 2000, seed);
    check("Lyapunov exponent small at k=0.01 and large at k=6",
          std::abs(reg.lambda) < 0.01 && chaos.lambda > 0.5);
  }
  {
    bool ok = true;
    for (MomentKind kind : {MomentKind::su2_jz2, MomentKind::su2_jz_sq, MomentKind::sud_jz2,
                            MomentKind::sud_jz_sq}) {
      const MomentResult res = monte_carlo_moment(kind, 1.0, 20000, seed);
      ok = ok && std::abs(res.mc_mean - res.analytic) <= 4.0 * res.mc_stderr;
    }
    check("ensemble moments match analytic values", ok);
    const MarginalMoments mm = marginal_integrals(0.5);
    check("marginal quadrature matches closed forms",
          std::abs(mm.x4_quadrature - 0.125) < 1e-10 &&
              std::abs(mm.x2y2_quadrature - 1.0 / 24.0) < 1e-10);
  }

  std::printf(failures == 0 ? "verify: all checks passed\n"
                            : "verify: %d check(s) FAILED\n",
              failures);
  return failures;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coupled kicked-top entanglement toolkit"};
  app.require_subcommand(1);

  CommonOpts evolve_opts, rates_opts, asym_opts, eigen_opts, classical_opts, moments_opts,
      verify_opts;
  int n_points = 200, n_steps = 10000;
  std::vector<double> moment_j;
  long moment_samples = 100000;

  add_common(app.add_subcommand("evolve", "ensemble entropy traces"), evolve_opts);
  add_common(app.add_subcommand("rates", "initial growth rates and correlations"), rates_opts);
  add_common(app.add_subcommand("asymptotic", "long-time averages vs spectral formula"),
             asym_opts);
  add_common(app.add_subcommand("eigen", "Floquet eigenvector entanglement"), eigen_opts);
  auto* classical_cmd = app.add_subcommand("classical", "classical Lyapunov exponents");
  add_common(classical_cmd, classical_opts);
  classical_cmd->add_option("--points", n_points, "initial conditions per k");
  classical_cmd->add_option("--steps", n_steps, "map iterations per point");
  auto* moments_cmd = app.add_subcommand("moments", "ensemble moment verification");
  add_common(moments_cmd, moments_opts);
  moments_cmd->add_option("--j", moment_j, "spin sizes to check");
  moments_cmd->add_option("--samples", moment_samples, "Monte Carlo samples");
  add_common(app.add_subcommand("verify", "fast end-to-end self checks"), verify_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("evolve")) return cmd_evolve(evolve_opts);
    if (app.got_subcommand("rates")) return cmd_rates(rates_opts);
    if (app.got_subcommand("asymptotic")) return cmd_asymptotic(asym_opts);
    if (app.got_subcommand("eigen")) return cmd_eigen(eigen_opts);
    if (app.got_subcommand("classical")) return cmd_classical(classical_opts, n_points, n_steps);
    if (app.got_subcommand("moments")) return cmd_moments(moments_opts, moment_j, moment_samples);
    if (app.got_subcommand("verify")) return cmd_verify(verify_opts);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
