#include "kicktop/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "kicktop/entanglement.hpp"
#include "kicktop/io.hpp"
#include "kicktop/spectrum_cache.hpp"

namespace kicktop {

namespace fs = std::filesystem;

EnsembleKind parse_ensemble(const std::string& name) {
  if (name == "su2") return EnsembleKind::su2_coherent;
  if (name == "sud") return EnsembleKind::sud_random;
  throw std::invalid_argument("unknown ensemble '" + name + "' (expected su2 or sud)");
}

CouplingScale parse_scale(const std::string& name) {
  if (name == "geometric") return CouplingScale::geometric;
  if (name == "first") return CouplingScale::first_spin;
  if (name == "second") return CouplingScale::second_spin;
  if (name == "arithmetic") return CouplingScale::arithmetic;
  throw std::invalid_argument("unknown coupling scale '" + name + "'");
}

namespace {

std::string join_list(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += fmt_full(xs[i]);
  }
  return out;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split(text, ',')) {
    const std::string t = trim(item);
    if (t.empty()) continue;
    std::size_t used = 0;
    const double v = std::stod(t, &used);
    if (used != t.size()) throw std::invalid_argument("bad number '" + t + "' in list");
    out.push_back(v);
  }
  return out;
}

}  // namespace

void ExperimentConfig::validate() const {
  SpinQuantum a(j1), b(j2);  // throws on bad spins
  (void)a;
  (void)b;
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon))
    throw std::invalid_argument("epsilon must be finite and nonnegative");
  if (k_list.empty()) throw std::invalid_argument("k_list must not be empty");
  for (double k : k_list)
    if (!std::isfinite(k)) throw std::invalid_argument("k values must be finite");
  if (count < 1) throw std::invalid_argument("ensemble count must be positive");
  if (kicks < 1) throw std::invalid_argument("kicks must be positive");
  if (window_start < 0 || window_start >= window_end)
    throw std::invalid_argument("asymptotic window must satisfy 0 <= start < end");
  if (fit_window < 2) throw std::invalid_argument("fit window needs at least two kicks");
  if (diag_cap < 1) throw std::invalid_argument("diagonalization cap must be positive");
}

std::string ExperimentConfig::canonical() const {
  std::ostringstream ss;
  ss << "count=" << count << "\n"
     << "diag_cap=" << diag_cap << "\n"
     << "ensemble=" << ensemble_name(ensemble) << "\n"
     << "epsilon=" << fmt_full(epsilon) << "\n"
     << "fit_window=" << fit_window << "\n"
     << "j1=" << fmt_full(j1) << "\n"
     << "j2=" << fmt_full(j2) << "\n"
     << "j_list=" << join_list(j_list) << "\n"
     << "k_list=" << join_list(k_list) << "\n"
     << "kicks=" << kicks << "\n"
     << "scale=" << coupling_scale_name(scale) << "\n"
     << "seed=" << seed << "\n"
     << "version=" << kVersion << "\n"
     << "window_end=" << window_end << "\n"
     << "window_start=" << window_start << "\n";
  return ss.str();
}

std::string ExperimentConfig::hash() const { return hex64(fnv1a64(canonical())); }

CoupledParams ExperimentConfig::coupled(double k) const { return coupled_at(k, j1, j2); }

CoupledParams ExperimentConfig::coupled_at(double k, double j1_, double j2_) const {
  CoupledParams p{TopParams{SpinQuantum(j1_), k}, TopParams{SpinQuantum(j2_), k}, epsilon,
                  scale};
  return p;
}

ExperimentConfig ExperimentConfig::from_string(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  " is not key=value: '" + t + "'");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    try {
      if (key == "j1") cfg.j1 = std::stod(value);
      else if (key == "j2") cfg.j2 = std::stod(value);
      else if (key == "epsilon") cfg.epsilon = std::stod(value);
      else if (key == "k_list") cfg.k_list = parse_list(value);
      else if (key == "ensemble") cfg.ensemble = parse_ensemble(value);
      else if (key == "count") cfg.count = std::stoi(value);
      else if (key == "seed") cfg.seed = std::stoull(value);
      else if (key == "kicks") cfg.kicks = std::stol(value);
      else if (key == "window_start") cfg.window_start = std::stol(value);
      else if (key == "window_end") cfg.window_end = std::stol(value);
      else if (key == "fit_window") cfg.fit_window = std::stoi(value);
      else if (key == "output_dir") cfg.output_dir = value;
      else if (key == "threads") cfg.threads = std::stoi(value);
      else if (key == "scale") cfg.scale = parse_scale(value);
      else if (key == "j_list") cfg.j_list = parse_list(value);
      else if (key == "diag_cap") cfg.diag_cap = std::stol(value);
      else if (key == "version") { /* informational */ }
      else throw std::invalid_argument("unknown config key '" + key + "'");
    } catch (const std::invalid_argument&) {
      throw;
    } catch (const std::exception&) {
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": cannot parse value '" + value + "' for key '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig ExperimentConfig::from_file(const fs::path& path) {
  const auto content = read_file(path);
  if (!content) throw std::runtime_error("cannot read config file " + path.string());
  return from_string(*content);
}

EntanglementTrace ensemble_trace(const ExperimentConfig& cfg, double k, EnsembleKind kind,
                                 long kicks) {
  const CoupledParams params = cfg.coupled(k);
  const FloquetOperator op = FloquetOperator::build(params);
  EnsembleSpec spec{kind, cfg.count, cfg.seed};
  const std::size_t nt = static_cast<std::size_t>(kicks) + 1;

  std::vector<std::vector<double>> member(static_cast<std::size_t>(cfg.count));
  parallel_for(static_cast<std::size_t>(cfg.count), cfg.threads, [&](std::size_t i) {
    const ProductState p =
        sample_product(spec, params.top1.spin, params.top2.spin, static_cast<std::uint64_t>(i));
    Evolver ev(op, p);
    auto& tr = member[i];
    tr.resize(nt);
    tr[0] = ev.linear_entropy();
    for (long n = 1; n <= kicks; ++n) {
      ev.step();
      tr[static_cast<std::size_t>(n)] = ev.linear_entropy();
    }
  });

  EntanglementTrace out;
  out.k = k;
  out.ensemble = kind;
  out.count = cfg.count;
  out.mean.resize(nt);
  out.stderr_mean.resize(nt);
  out.min.resize(nt);
  out.max.resize(nt);
  const double n = static_cast<double>(cfg.count);
  for (std::size_t t = 0; t < nt; ++t) {
    double mean = 0.0, lo = member[0][t], hi = member[0][t];
    for (const auto& tr : member) {
      mean += tr[t];
      lo = std::min(lo, tr[t]);
      hi = std::max(hi, tr[t]);
    }
    mean /= n;
    double var = 0.0;
    for (const auto& tr : member) var += (tr[t] - mean) * (tr[t] - mean);
    out.mean[t] = mean;
    out.stderr_mean[t] = cfg.count > 1 ? std::sqrt(var / (n * (n - 1.0))) : 0.0;
    out.min[t] = lo;
    out.max[t] = hi;
  }
  return out;
}

RateFit fit_initial_rate(const EntanglementTrace& trace, int fit_window) {
  if (fit_window < 2 || static_cast<std::size_t>(fit_window) >= trace.mean.size())
    throw std::invalid_argument("fit window must fit inside the trace");
  const int n = fit_window;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (int i = 1; i <= n; ++i) {
    const double x = static_cast<double>(i);
    const double y = trace.mean[static_cast<std::size_t>(i)];
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
  }
  const double dn = static_cast<double>(n);
  const double sxx_c = sxx - sx * sx / dn;
  const double sxy_c = sxy - sx * sy / dn;
  const double syy_c = syy - sy * sy / dn;
  RateFit fit;
  fit.slope = sxy_c / sxx_c;
  fit.intercept = (sy - fit.slope * sx) / dn;
  if (syy_c <= 1e-28) {
    fit.degenerate = true;
    fit.r2 = 0.0;
  } else {
    fit.r2 = (sxy_c * sxy_c) / (sxx_c * syy_c);
  }
  return fit;
}

double window_mean_entropy(const FloquetOperator& op, const ProductState& start,
                           long window_start, long window_end) {
  return window_mean_entropy(op, flatten(start), window_start, window_end);
}

double window_mean_entropy(const FloquetOperator& op, const PureState& start,
                           long window_start, long window_end) {
  if (window_start < 0 || window_start >= window_end)
    throw std::invalid_argument("window must satisfy 0 <= start < end");
  Evolver ev(op, start);
  ev.advance(window_start);
  double acc = ev.linear_entropy();
  for (long n = window_start; n < window_end; ++n) {
    ev.step();
    acc += ev.linear_entropy();
  }
  return acc / static_cast<double>(window_end - window_start + 1);
}

namespace {

constexpr double kGapTol = 1e-10;

std::string trace_filename(double k, EnsembleKind kind) {
  return "evolution_k" + fmt_short(k) + "_" + ensemble_name(kind) + ".csv";
}

// Cached (or freshly computed) spectrum summary for one parameter point.
SpectrumSummary spectrum_summary(const ExperimentConfig& cfg, const CoupledParams& params,
                                 const fs::path& cache_dir) {
  if (auto cached = load_spectrum_cache(cache_dir, params)) return *cached;
  const FloquetOperator op = FloquetOperator::build(params);
  const Spectrum spec = diagonalize(op, cfg.diag_cap);
  const SpectrumSummary summary = summarize(spec);
  store_spectrum_cache(cache_dir, params, summary);
  return summary;
}

std::string cell_params_string(const ExperimentConfig& cfg, const CoupledParams& params,
                               EnsembleKind kind) {
  std::ostringstream ss;
  ss << spectrum_cache_params(params) << " kind=" << ensemble_name(kind)
     << " count=" << cfg.count << " seed=" << cfg.seed << " window=" << cfg.window_start << ":"
     << cfg.window_end;
  return ss.str();
}

// Ensemble mean of the window-averaged entropy, checkpointed per (params,
// ensemble) cell so interrupted sweeps resume where they stopped.
double measured_asymptotic(const ExperimentConfig& cfg, const CoupledParams& params,
                           EnsembleKind kind, const fs::path& cache_dir) {
  const std::string cell = cell_params_string(cfg, params, kind);
  const fs::path path = cache_dir / ("cell_" + hex64(fnv1a64(cell)) + ".csv");
  if (const auto content = read_file(path)) {
    std::istringstream in(*content);
    std::string line;
    bool ok = false;
    std::vector<double> values;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      if (line.rfind("# cell ", 0) == 0) {
        ok = line.substr(7) == cell;
        continue;
      }
      if (line[0] == '#' || line.rfind("member", 0) == 0) continue;
      const auto f = split(line, ',');
      if (f.size() == 2) values.push_back(std::stod(f[1]));
    }
    if (ok && values.size() == static_cast<std::size_t>(cfg.count)) {
      double mean = 0.0;
      for (double v : values) mean += v;
      return mean / static_cast<double>(values.size());
    }
  }

  const FloquetOperator op = FloquetOperator::build(params);
  EnsembleSpec spec{kind, cfg.count, cfg.seed};
  std::vector<double> values(static_cast<std::size_t>(cfg.count));
  parallel_for(static_cast<std::size_t>(cfg.count), cfg.threads, [&](std::size_t i) {
    const ProductState p =
        sample_product(spec, params.top1.spin, params.top2.spin, static_cast<std::uint64_t>(i));
    values[i] = window_mean_entropy(op, p, cfg.window_start, cfg.window_end);
  });

  std::ostringstream ss;
  ss << "# cell " << cell << "\n";
  ss << "member,window_mean\n";
  for (std::size_t i = 0; i < values.size(); ++i)
    ss << i << ',' << fmt_full(values[i]) << "\n";
  write_file_atomic(path, ss.str());

  double mean = 0.0;
  for (double v : values) mean += v;
  return mean / static_cast<double>(values.size());
}

AsymptoticRow sweep_row(const ExperimentConfig& cfg, const CoupledParams& params,
                        const fs::path& cache_dir) {
  AsymptoticRow row;
  row.k = params.top1.kick;
  row.epsilon = cfg.epsilon;
  const SpectrumSummary summary = spectrum_summary(cfg, params, cache_dir);
  row.min_gap = summary.min_gap;
  row.degenerate = summary.min_gap < kGapTol;
  row.mean_eigen_entropy = summary.mean_entropy();
  row.lower_bound = row.degenerate ? std::numeric_limits<double>::quiet_NaN()
                                   : 2.0 * row.mean_eigen_entropy - 1.0;
  row.measured_su2 = measured_asymptotic(cfg, params, EnsembleKind::su2_coherent, cache_dir);
  row.measured_sud = measured_asymptotic(cfg, params, EnsembleKind::sud_random, cache_dir);
  return row;
}

}  // namespace

std::vector<EntanglementTrace> run_evolution_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const fs::path dir = cfg.output_dir;
  std::vector<EntanglementTrace> traces;
  std::vector<fs::path> files;
  for (double k : cfg.k_list) {
    traces.push_back(ensemble_trace(cfg, k, cfg.ensemble, cfg.kicks));
    const fs::path path = dir / trace_filename(k, cfg.ensemble);
    write_trace_csv(path, cfg, traces.back());
    files.push_back(path);  // flush per k so interrupted runs keep progress
    write_manifest(cfg, files);
  }
  return traces;
}

std::vector<RateRow> run_rate_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<RateRow> rows;
  for (double k : cfg.k_list) {
    for (EnsembleKind kind : {EnsembleKind::su2_coherent, EnsembleKind::sud_random}) {
      RateRow row;
      row.k = k;
      row.ensemble = kind;
      const EntanglementTrace trace = ensemble_trace(cfg, k, kind, cfg.fit_window);
      row.fit = fit_initial_rate(trace, cfg.fit_window);
      rows.push_back(row);
    }
  }
  const fs::path path = fs::path(cfg.output_dir) / "rates.csv";
  write_rates_csv(path, cfg, rows);
  write_manifest(cfg, {path});
  return rows;
}

std::vector<AsymptoticRow> run_asymptotic_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  const fs::path dir = cfg.output_dir;
  const fs::path cache_dir = dir / "cache";
  const fs::path merged = dir / "asymptotic.csv";
  std::vector<AsymptoticRow> rows;
  std::vector<fs::path> files;
  for (double k : cfg.k_list) {
    const CoupledParams params = cfg.coupled(k);
    rows.push_back(sweep_row(cfg, params, cache_dir));
    files.push_back(spectrum_cache_path(cache_dir, params));
    write_asymptotic_csv(merged, cfg, rows);  // checkpoint after every k
  }
  files.push_back(merged);
  write_manifest(cfg, files);
  return rows;
}

std::vector<ScalingRow> run_scaling_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.j_list.empty())
    throw std::invalid_argument("scaling experiment requires a nonempty j_list");
  const fs::path dir = cfg.output_dir;
  const fs::path cache_dir = dir / "cache";
  const fs::path merged = dir / "scaling.csv";
  std::vector<ScalingRow> rows;
  for (double j : cfg.j_list) {
    for (double k : cfg.k_list) {
      // Unequal spins keep the pair spectrum clear of systematic degeneracy.
      const CoupledParams params = cfg.coupled_at(k, j, j + 0.5);
      const AsymptoticRow a = sweep_row(cfg, params, cache_dir);
      ScalingRow row;
      row.j = j;
      row.k = k;
      row.measured_su2 = a.measured_su2;
      row.measured_sud = a.measured_sud;
      row.mean_eigen_entropy = a.mean_eigen_entropy;
      row.lower_bound = a.lower_bound;
      row.min_gap = a.min_gap;
      row.degenerate = a.degenerate;
      row.statistical_limit =
          statistical_limit(params.top1.spin.dim(), params.top2.spin.dim());
      rows.push_back(row);
      write_scaling_csv(merged, cfg, rows);
    }
  }
  write_manifest(cfg, {merged});
  return rows;
}

namespace {

std::string csv_preamble(const ExperimentConfig& cfg) {
  std::ostringstream ss;
  ss << "# version " << kVersion << "\n";
  ss << "# config_hash " << cfg.hash() << "\n";
  return ss.str();
}

}  // namespace

void write_trace_csv(const fs::path& path, const ExperimentConfig& cfg,
                     const EntanglementTrace& trace) {
  std::ostringstream ss;
  ss << csv_preamble(cfg);
  ss << "# k " << fmt_full(trace.k) << " epsilon " << fmt_full(cfg.epsilon) << " j1 "
     << fmt_full(cfg.j1) << " j2 " << fmt_full(cfg.j2) << " ensemble "
     << ensemble_name(trace.ensemble) << " count " << trace.count << " seed " << cfg.seed
     << "\n";
  ss << "kick,mean,stderr,min,max\n";
  for (std::size_t t = 0; t < trace.mean.size(); ++t)
    ss << t << ',' << fmt_short(trace.mean[t]) << ',' << fmt_short(trace.stderr_mean[t]) << ','
       << fmt_short(trace.min[t]) << ',' << fmt_short(trace.max[t]) << "\n";
  write_file_atomic(path, ss.str());
}

void write_rates_csv(const fs::path& path, const ExperimentConfig& cfg,
                     const std::vector<RateRow>& rows) {
  std::ostringstream ss;
  ss << csv_preamble(cfg);
  ss << "k,ensemble,slope,intercept,r2,count,fit_window\n";
  for (const auto& row : rows)
    ss << fmt_short(row.k) << ',' << ensemble_name(row.ensemble) << ','
       << fmt_full(row.fit.slope) << ',' << fmt_full(row.fit.intercept) << ','
       << fmt_short(row.fit.r2) << ',' << cfg.count << ',' << cfg.fit_window << "\n";
  write_file_atomic(path, ss.str());
}

void write_asymptotic_csv(const fs::path& path, const ExperimentConfig& cfg,
                          const std::vector<AsymptoticRow>& rows) {
  std::ostringstream ss;
  ss << csv_preamble(cfg);
  for (const auto& row : rows)
    if (row.degenerate)
      ss << "# k " << fmt_short(row.k) << " degenerate_spectrum (eigen columns advisory)\n";
  ss << "k,epsilon,mean_eigen_entropy,lower_bound,measured_asymptotic_su2,"
        "measured_asymptotic_sud,min_gap\n";
  for (const auto& row : rows)
    ss << fmt_short(row.k) << ',' << fmt_short(row.epsilon) << ','
       << fmt_full(row.mean_eigen_entropy) << ',' << fmt_full(row.lower_bound) << ','
       << fmt_full(row.measured_su2) << ',' << fmt_full(row.measured_sud) << ','
       << fmt_full(row.min_gap) << "\n";
  write_file_atomic(path, ss.str());
}

void write_scaling_csv(const fs::path& path, const ExperimentConfig& cfg,
                       const std::vector<ScalingRow>& rows) {
  std::ostringstream ss;
  ss << csv_preamble(cfg);
  ss << "j,k,asymptotic_su2,asymptotic_sud,mean_eigen_entropy,lower_bound,"
        "statistical_limit,min_gap\n";
  for (const auto& row : rows)
    ss << fmt_short(row.j) << ',' << fmt_short(row.k) << ',' << fmt_full(row.measured_su2)
       << ',' << fmt_full(row.measured_sud) << ',' << fmt_full(row.mean_eigen_entropy) << ','
       << fmt_full(row.lower_bound) << ',' << fmt_full(row.statistical_limit) << ','
       << fmt_full(row.min_gap) << "\n";
  write_file_atomic(path, ss.str());
}

void write_correlation_csv(const fs::path& path, const ExperimentConfig& cfg,
                           const CorrelationTable& table) {
  std::ostringstream ss;
  ss << csv_preamble(cfg);
  ss << "n,m,C1,C2,D\n";
  for (int n = 0; n <= table.horizon; ++n)
    for (int m = 0; m <= table.horizon; ++m)
      ss << n << ',' << m << ',' << fmt_full(table.c1(n, m)) << ',' << fmt_full(table.c2(n, m))
         << ',' << fmt_full(table.d(n, m)) << "\n";
  write_file_atomic(path, ss.str());
}

void write_manifest(const ExperimentConfig& cfg, const std::vector<fs::path>& files) {
  const fs::path manifest_path = fs::path(cfg.output_dir) / "manifest.txt";

  // Keep entries from earlier runs with the same config; a different config
  // hash starts the manifest over.
  std::vector<std::string> names;
  std::vector<std::string> lines;
  if (const auto old = read_file(manifest_path)) {
    bool same_config = false;
    for (const auto& line : split(*old, '\n'))
      if (line.rfind("config_hash=", 0) == 0) same_config = line.substr(12) == cfg.hash();
    if (same_config) {
      for (const auto& line : split(*old, '\n')) {
        if (line.rfind("file=", 0) != 0) continue;
        const std::string name = line.substr(5, line.find(' ') - 5);
        names.push_back(name);
        lines.push_back(line);
      }
    }
  }

  for (const auto& file : files) {
    const auto content = read_file(file);
    if (!content) continue;
    const std::string name = file.filename().string();
    const std::string entry = "file=" + name + " bytes=" + std::to_string(content->size()) +
                              " fnv=" + hex64(fnv1a64(*content));
    bool replaced = false;
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i] == name) {
        lines[i] = entry;
        replaced = true;
        break;
      }
    }
    if (!replaced) {
      names.push_back(name);
      lines.push_back(entry);
    }
  }

  std::ostringstream ss;
  ss << "version=" << kVersion << "\n";
  ss << "config_hash=" << cfg.hash() << "\n";
  ss << "config_begin\n" << cfg.canonical() << "config_end\n";
  for (const auto& line : lines) ss << line << "\n";
  write_file_atomic(manifest_path, ss.str());
}

}  // namespace kicktop
