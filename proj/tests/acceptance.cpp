// Acceptance harness: one line per criterion, exit code = number of failures.
// Heavy sweep artifacts land in acceptance_out/ and are reused on reruns.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <sstream>
#include <string>
#include <vector>

#include "kicktop/classical.hpp"
#include "kicktop/entanglement.hpp"
#include "kicktop/experiments.hpp"
#include "kicktop/floquet.hpp"
#include "kicktop/moments.hpp"
#include "kicktop/rng.hpp"
#include "kicktop/spectral.hpp"
#include "kicktop/spin.hpp"
#include "kicktop/states.hpp"

using namespace kicktop;

namespace {

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

template <typename Fn>
void criterion(int id, const char* name, Fn fn) {
  Timer timer;
  Outcome out;
  try {
    out = fn();
  } catch (const std::exception& e) {
    out.pass = false;
    out.detail = std::string("exception: ") + e.what();
  }
  if (!out.pass) ++failures;
  std::printf("[%s] %2d %s: %s (%.1f s)\n", out.pass ? "PASS" : "FAIL", id, name,
              out.detail.c_str(), timer.seconds());
  std::fflush(stdout);
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

Outcome statistical_limit_check() {
  Timer timer;
  Outcome out;
  const double exact = statistical_limit(40, 41);
  const bool exact_ok = std::abs(exact - (1.0 - 81.0 / 1641.0)) < 1e-12;

  RandomStream rng(101);
  const int n = 1000;
  double mean = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double s = linear_entropy_of_state(sample_haar_state(12, rng), 3, 4);
    mean += s;
    sq += s * s;
  }
  mean /= n;
  const double se = std::sqrt((sq / n - mean * mean) / (n - 1.0));
  const double target = statistical_limit(3, 4);
  const bool mc_ok = std::abs(mean - target) <= 3.0 * se;
  out.pass = exact_ok && mc_ok && timer.seconds() < 10.0;
  out.detail = "limit(40,41)=" + fmt(exact) + (exact_ok ? " exact" : " WRONG") +
               "; haar mean " + fmt(mean) + " vs " + fmt(target) + " (se " + fmt(se) + ")";
  return out;
}

struct RatePack {
  double su2_k6 = 0.0, sud_k6 = 0.0, su2_k001 = 0.0, sud_k001 = 0.0, reference = 0.0;
};

RatePack measure_rates() {
  ExperimentConfig cfg;
  cfg.count = 64;
  cfg.seed = 5;
  cfg.fit_window = 15;
  RatePack pack;
  pack.reference = strong_chaos_rate(cfg.coupled(6.0));
  const auto slope = [&cfg](double k, EnsembleKind kind) {
    const EntanglementTrace trace = ensemble_trace(cfg, k, kind, cfg.fit_window);
    return fit_initial_rate(trace, cfg.fit_window).slope;
  };
  pack.sud_k6 = slope(6.0, EnsembleKind::sud_random);
  pack.su2_k6 = slope(6.0, EnsembleKind::su2_coherent);
  pack.sud_k001 = slope(0.01, EnsembleKind::sud_random);
  pack.su2_k001 = slope(0.01, EnsembleKind::su2_coherent);
  return pack;
}

Outcome strong_chaos_rate_check(const RatePack& r) {
  Outcome out;
  const bool vs_formula = std::abs(r.sud_k6 / r.reference - 1.0) <= 0.25;
  const bool ensembles_agree = std::abs(r.su2_k6 - r.sud_k6) <= 0.15 * std::abs(r.sud_k6);
  out.pass = vs_formula && ensembles_agree;
  out.detail = "sud slope " + fmt(r.sud_k6) + " vs (2/9)eps^2 j1 j2 = " + fmt(r.reference) +
               "; su2 slope " + fmt(r.su2_k6);
  return out;
}

Outcome regular_rate_contrast_check(const RatePack& r) {
  Outcome out;
  const double ens_ratio = r.sud_k001 / r.su2_k001;
  const double k_ratio = r.sud_k001 / r.sud_k6;
  out.pass = ens_ratio >= 100.0 && ens_ratio <= 1000.0 && k_ratio >= 2.5 && k_ratio <= 6.0;
  out.detail = "k=0.01 sud/su2 = " + fmt(ens_ratio) + "; sud k=0.01/k=6 = " + fmt(k_ratio);
  return out;
}

const AsymptoticRow* find_row(const std::vector<AsymptoticRow>& rows, double k) {
  for (const auto& row : rows)
    if (row.k == k) return &row;
  return nullptr;
}

Outcome lower_bound_check(const std::vector<AsymptoticRow>& rows) {
  Outcome out;
  out.pass = true;
  double worst = 1.0;
  for (double k : {0.01, 1.0, 2.0, 3.0, 4.0, 6.0}) {
    const AsymptoticRow* row = find_row(rows, k);
    if (!row || row->degenerate || row->min_gap <= 1e-10) {
      out.pass = false;
      out.detail = "k=" + fmt(k) + (row ? " degenerate spectrum" : " missing");
      return out;
    }
    const double margin =
        std::min(row->measured_su2, row->measured_sud) - (row->lower_bound - 1e-9);
    worst = std::min(worst, margin);
    if (margin < 0.0) out.pass = false;
  }
  out.detail = "worst margin above 2*S_eigen-1 is " + fmt(worst);
  return out;
}

struct RefinedCell {
  double mean = 0.0;
  double stderr_mean = 0.0;
};

// At k=0.01 the bound is nearly saturated (margin ~1.4e-2) while individual
// su2 members spread over ~0.1 (regular regime: island-trapped vs strongly
// entangling initial directions), so the 32-state sweep mean cannot resolve
// the comparison; that one cell gets a larger ensemble. The stream prefix
// matches the sweep's members, so this is strictly more data, not a redraw.
RefinedCell refine_su2_cell(const ExperimentConfig& cfg, double k, int count) {
  const CoupledParams params{TopParams{SpinQuantum(cfg.j1), k},
                             TopParams{SpinQuantum(cfg.j2), k}, cfg.epsilon, cfg.scale};
  const FloquetOperator op = FloquetOperator::build(params);
  const EnsembleSpec spec{EnsembleKind::su2_coherent, count, cfg.seed};
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < count; ++i) {
    const ProductState p = sample_product(spec, params.top1.spin, params.top2.spin,
                                          static_cast<std::uint64_t>(i));
    const double v = window_mean_entropy(op, p, cfg.window_start, cfg.window_end);
    sum += v;
    sumsq += v * v;
  }
  RefinedCell cell;
  cell.mean = sum / count;
  const double var = (sumsq - sum * sum / count) / (count - 1);
  cell.stderr_mean = std::sqrt(std::max(var, 0.0) / count);
  return cell;
}

Outcome inequality_suite_check() {
  Timer timer;
  Outcome out;
  const Eigen::Index dims[3][2] = {{2, 2}, {3, 4}, {8, 8}};
  double worst = 1.0;
  RandomStream rng(202);
  for (const auto& d : dims) {
    for (int trial = 0; trial < 10000; ++trial) {
      const PureState a = sample_haar_state(d[0] * d[1], rng);
      const PureState b = sample_haar_state(d[0] * d[1], rng);
      const InequalityMargins m = check_cross_inequalities(a, b, d[0], d[1]);
      worst = std::min({worst, m.cross_margin, m.product_margin});
    }
  }
  out.pass = worst >= -1e-12 && timer.seconds() < 30.0;
  out.detail = "30000 pairs, worst slack " + fmt(worst);
  return out;
}

Outcome asymptotic_formula_check() {
  Timer timer;
  Outcome out;
  const CoupledParams params{TopParams{SpinQuantum(1.0), 3.0}, TopParams{SpinQuantum(1.5), 3.0},
                             0.1, CouplingScale::geometric};
  const FloquetOperator op = FloquetOperator::build(params);
  const Spectrum spec = diagonalize(op);
  const AsymptoticKernel kernel(spec);
  RandomStream rng(303);
  double worst = 0.0, worst_long = 0.0;
  for (int i = 0; i < 10; ++i) {
    const PureState psi = sample_haar_state(op.dim(), rng);
    const double closed = kernel.evaluate(psi);
    worst = std::max(worst, std::abs(closed - window_mean_entropy(op, psi, 50000, 100000)));
    worst_long =
        std::max(worst_long, std::abs(closed - window_mean_entropy(op, psi, 400000, 800000)));
  }
  out.pass = worst <= 5e-3 && timer.seconds() < 60.0;
  out.detail = "10 states, max |closed - windowed[5e4,1e5]| = " + fmt(worst) +
               " (window x8 longer: " + fmt(worst_long) + ")";
  return out;
}

Outcome moment_suite_check() {
  Outcome out;
  out.pass = true;
  double worst_sigma = 0.0, worst_rel = 0.0;
  for (double j : {0.5, 1.0, 5.0}) {
    for (MomentKind kind : {MomentKind::su2_jz2, MomentKind::su2_jz_sq, MomentKind::sud_jz2,
                            MomentKind::sud_jz_sq}) {
      const MomentResult r = monte_carlo_moment(kind, j, 100000, 404);
      const double dev = std::abs(r.mc_mean - r.analytic);
      if (dev > 3.0 * r.mc_stderr + 1e-12) out.pass = false;
      if (r.mc_stderr > 0.0) worst_sigma = std::max(worst_sigma, dev / r.mc_stderr);
    }
    const MarginalMoments m = marginal_integrals(j);
    const double rel = std::max(std::abs(m.x4_quadrature / m.x4_analytic - 1.0),
                                std::abs(m.x2y2_quadrature / m.x2y2_analytic - 1.0));
    worst_rel = std::max(worst_rel, rel);
    if (rel > 1e-8) out.pass = false;
  }
  out.detail = "worst monte carlo deviation " + fmt(worst_sigma) +
               " sigma; worst quadrature rel err " + fmt(worst_rel);
  return out;
}

Outcome sweep_shape_check(const std::vector<AsymptoticRow>& rows) {
  Outcome out;
  const AsymptoticRow* r001 = find_row(rows, 0.01);
  const AsymptoticRow* r1 = find_row(rows, 1.0);
  const AsymptoticRow* r15 = find_row(rows, 1.5);
  const AsymptoticRow* r2 = find_row(rows, 2.0);
  const AsymptoticRow* r6 = find_row(rows, 6.0);
  if (!r001 || !r1 || !r15 || !r2 || !r6) {
    out.detail = "sweep rows missing";
    return out;
  }

  bool min_interior = true;
  for (const auto& row : rows)
    if (row.k != 1.5 && row.measured_su2 <= r15->measured_su2) min_interior = false;

  const bool regular_high =
      r001->measured_su2 > r1->measured_su2 && r001->measured_su2 > r2->measured_su2;

  double su2_lo = 1.0, su2_hi = 0.0, sud_lo = 1.0, sud_hi = 0.0;
  for (const auto& row : rows) {
    su2_lo = std::min(su2_lo, row.measured_su2);
    su2_hi = std::max(su2_hi, row.measured_su2);
    sud_lo = std::min(sud_lo, row.measured_sud);
    sud_hi = std::max(sud_hi, row.measured_sud);
  }
  const bool sud_flat = (sud_hi - sud_lo) < (su2_hi - su2_lo);

  const double limit = statistical_limit(40, 41);
  const bool below_limit = r6->measured_su2 < limit && r6->measured_sud < limit;
  const bool eigen_below =
      r6->mean_eigen_entropy < r6->measured_su2 && r6->mean_eigen_entropy < r6->measured_sud;

  out.pass = min_interior && regular_high && sud_flat && below_limit && eigen_below;
  std::ostringstream ss;
  ss << "min@1.5:" << (min_interior ? "y" : "N") << " regular-high:"
     << (regular_high ? "y" : "N") << " sud-flat:" << (sud_flat ? "y" : "N")
     << " (spread " << fmt(sud_hi - sud_lo) << " vs " << fmt(su2_hi - su2_lo) << ")"
     << " below-limit:" << (below_limit ? "y" : "N") << " eigen-below:"
     << (eigen_below ? "y" : "N");
  out.detail = ss.str();
  return out;
}

Outcome classical_suite_check() {
  Outcome out;
  ClassicalState s1(0.2, 0.3, 0.93), s2(-0.4, 0.1, 0.9);
  for (long t = 0; t < 1000000; ++t) {
    auto [n1, n2] = coupled_classical_step(s1, s2, 6.0, 0.01);
    s1 = n1;
    s2 = n2;
  }
  const bool norm_ok =
      std::abs(s1.norm() - 1.0) <= 1e-9 && std::abs(s2.norm() - 1.0) <= 1e-9;

  const double weak = lyapunov_exponent(0.01, 100, 2000, 505).lambda;
  const bool weak_ok = weak < 0.01;
  double prev = -1.0;
  bool monotone = true;
  std::string lams;
  for (double k : {3.0, 4.0, 5.0, 6.0}) {
    const double lam = lyapunov_exponent(k, 200, 5000, 505).lambda;
    if (lam <= prev) monotone = false;
    lams += (lams.empty() ? "" : ",") + fmt(lam);
    prev = lam;
  }

  RandomStream rng(606);
  double period_dev = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const ClassicalState start = ClassicalState::random(rng);
    ClassicalState p = start;
    for (int t = 0; t < 4; ++t) p = classical_step(p, 0.0);
    period_dev = std::max({period_dev, std::abs(p.x - start.x), std::abs(p.y - start.y),
                           std::abs(p.z - start.z)});
  }
  const bool period_ok = period_dev <= 1e-12;

  out.pass = norm_ok && weak_ok && monotone && period_ok;
  out.detail = "norm:" + std::string(norm_ok ? "y" : "N") + " lambda(0.01)=" + fmt(weak) +
               " lambda(3..6)=" + lams + (monotone ? " monotone" : " NOT-monotone") +
               " period4 dev " + fmt(period_dev);
  return out;
}

Outcome decoupled_control_check() {
  Outcome out;
  ExperimentConfig cfg;
  cfg.epsilon = 0.0;
  cfg.count = 10;
  cfg.seed = 909;
  const CoupledParams params = cfg.coupled(3.0);
  const FloquetOperator op = FloquetOperator::build(params);
  EnsembleSpec spec{EnsembleKind::sud_random, cfg.count, cfg.seed};
  double max_entropy = 0.0;
  for (int i = 0; i < cfg.count; ++i) {
    const ProductState p = sample_product(spec, params.top1.spin, params.top2.spin,
                                          static_cast<std::uint64_t>(i));
    Evolver ev(op, p);
    for (int n = 0; n < 1000; ++n) {
      ev.step();
      max_entropy = std::max(max_entropy, ev.linear_entropy());
    }
  }
  const bool evolve_ok = max_entropy < 1e-10;

  const CoupledParams small{TopParams{SpinQuantum(1.0), 2.7}, TopParams{SpinQuantum(1.5), 2.7},
                            0.0, CouplingScale::geometric};
  const Spectrum sp = diagonalize(FloquetOperator::build(small));
  const EigenEntanglementReport rep = eigenvector_entanglement(sp);
  const bool eigen_ok = !rep.degenerate && rep.mean < 1e-8;

  out.pass = evolve_ok && eigen_ok;
  out.detail = "max trace entropy " + fmt(max_entropy) + "; eigenvector mean " +
               fmt(rep.mean) + (rep.degenerate ? " (degenerate!)" : "");
  return out;
}

}  // namespace

int main() {
  std::printf("acceptance suite (artifacts in acceptance_out/)\n");
  std::fflush(stdout);

  criterion(1, "statistical limit", statistical_limit_check);

  const RatePack rates = measure_rates();
  criterion(2, "strong-chaos growth rate", [&] { return strong_chaos_rate_check(rates); });
  criterion(3, "regular-regime rate contrast",
            [&] { return regular_rate_contrast_check(rates); });

  ExperimentConfig sweep_cfg;
  sweep_cfg.count = 32;
  sweep_cfg.seed = 7;
  sweep_cfg.output_dir = "acceptance_out";
  std::printf("running asymptotic sweep (7 kick strengths, %d states each)...\n",
              sweep_cfg.count);
  std::fflush(stdout);
  std::vector<AsymptoticRow> rows;
  std::string sweep_error;
  try {
    rows = run_asymptotic_sweep(sweep_cfg);
    std::printf("  k      eigen    bound    su2      sud      min_gap\n");
    for (const auto& row : rows)
      std::printf("  %-6g %-8.5f %-8.5f %-8.5f %-8.5f %.3g%s\n", row.k,
                  row.mean_eigen_entropy, row.lower_bound, row.measured_su2, row.measured_sud,
                  row.min_gap, row.degenerate ? " DEGENERATE" : "");
    std::fflush(stdout);
  } catch (const std::exception& e) {
    sweep_error = e.what();
  }

  std::vector<AsymptoticRow> bound_rows = rows;
  RefinedCell refined;
  if (sweep_error.empty()) {
    const int refine_count = 512;
    std::printf("refining the k=0.01 su2 cell with %d states...\n", refine_count);
    std::fflush(stdout);
    try {
      refined = refine_su2_cell(sweep_cfg, 0.01, refine_count);
      std::printf("  k=0.01 su2: %.5f +/- %.5f (sweep value %.5f from %d states)\n",
                  refined.mean, refined.stderr_mean,
                  find_row(rows, 0.01) ? find_row(rows, 0.01)->measured_su2 : 0.0,
                  sweep_cfg.count);
      std::fflush(stdout);
      for (auto& row : bound_rows)
        if (row.k == 0.01) row.measured_su2 = refined.mean;
    } catch (const std::exception& e) {
      sweep_error = e.what();
    }
  }
  criterion(4, "asymptotic lower bound", [&]() -> Outcome {
    if (!sweep_error.empty()) return {false, "sweep failed: " + sweep_error};
    Outcome out = lower_bound_check(bound_rows);
    out.detail += " (k=0.01 su2 refined: " + fmt(refined.mean) + " +/- " +
                  fmt(refined.stderr_mean) + ")";
    return out;
  });

  criterion(5, "trace inequality suite", inequality_suite_check);
  criterion(6, "asymptotic closed form vs time average", asymptotic_formula_check);
  criterion(7, "ensemble moments and marginals", moment_suite_check);
  criterion(8, "asymptotic sweep shape", [&]() -> Outcome {
    if (!sweep_error.empty()) return {false, "sweep failed: " + sweep_error};
    return sweep_shape_check(rows);
  });
  criterion(9, "classical map suite", classical_suite_check);
  criterion(10, "decoupled controls", decoupled_control_check);

  std::printf("%d of 10 criteria passed\n", 10 - failures);
  return failures;
}
