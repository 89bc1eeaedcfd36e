#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "kicktop/correlations.hpp"
#include "kicktop/floquet.hpp"
#include "kicktop/states.hpp"

namespace kicktop {

// Everything a run needs, loadable from a key=value file. The canonical
// serialization (and its hash) stamps every output so artifacts can be
// traced back to their exact inputs.
struct ExperimentConfig {
  double j1 = 19.5;
  double j2 = 20.0;
  double epsilon = 0.01;
  std::vector<double> k_list = {0.01, 1.0, 1.5, 2.0, 3.0, 4.0, 6.0};
  EnsembleKind ensemble = EnsembleKind::sud_random;
  int count = 100;
  std::uint64_t seed = 1;
  long kicks = 1000;
  long window_start = 20000;  // time-average window for asymptotics
  long window_end = 40000;
  int fit_window = 15;
  std::string output_dir = "out";
  int threads = 1;
  CouplingScale scale = CouplingScale::geometric;
  std::vector<double> j_list;  // spin sizes for the scaling experiment
  long diag_cap = 4096;

  void validate() const;
  std::string canonical() const;
  std::string hash() const;
  CoupledParams coupled(double k) const;
  CoupledParams coupled_at(double k, double j1_, double j2_) const;

  static ExperimentConfig from_string(const std::string& text);
  static ExperimentConfig from_file(const std::filesystem::path& path);
};

EnsembleKind parse_ensemble(const std::string& name);
CouplingScale parse_scale(const std::string& name);

// Ensemble statistics of the linear entropy after each kick (index = kick
// count, starting at 0).
struct EntanglementTrace {
  double k = 0.0;
  EnsembleKind ensemble = EnsembleKind::sud_random;
  int count = 0;
  std::vector<double> mean, stderr_mean, min, max;
};

EntanglementTrace ensemble_trace(const ExperimentConfig& cfg, double k, EnsembleKind kind,
                                 long kicks);

// Least squares line through (n, mean_n) for n = 1..fit_window.
struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  bool degenerate = false;  // flat data, slope not meaningful
};

RateFit fit_initial_rate(const EntanglementTrace& trace, int fit_window);

// Entropy traces for every k in cfg.k_list (cfg.ensemble only); writes one
// CSV per k plus a manifest.
std::vector<EntanglementTrace> run_evolution_experiment(const ExperimentConfig& cfg);

// Short traces for both ensembles at every k, fitted over cfg.fit_window.
struct RateRow {
  double k = 0.0;
  EnsembleKind ensemble = EnsembleKind::sud_random;
  RateFit fit;
};

std::vector<RateRow> run_rate_experiment(const ExperimentConfig& cfg);

// One row of the asymptotic sweep: spectral quantities from the cached
// diagonalization and measured time averages for both ensembles.
struct AsymptoticRow {
  double k = 0.0;
  double epsilon = 0.0;
  double mean_eigen_entropy = 0.0;
  double lower_bound = 0.0;
  double measured_su2 = 0.0;
  double measured_sud = 0.0;
  double min_gap = 0.0;
  bool degenerate = false;  // eigen columns advisory when set
};

std::vector<AsymptoticRow> run_asymptotic_sweep(const ExperimentConfig& cfg);

// Asymptotic entanglement versus spin size at fixed k (cfg.j_list sets the
// first spin; the second is j + 1/2 to keep the spectrum nondegenerate).
struct ScalingRow {
  double j = 0.0;
  double k = 0.0;
  double measured_su2 = 0.0;
  double measured_sud = 0.0;
  double mean_eigen_entropy = 0.0;
  double lower_bound = 0.0;
  double statistical_limit = 0.0;
  double min_gap = 0.0;
  bool degenerate = false;
};

std::vector<ScalingRow> run_scaling_experiment(const ExperimentConfig& cfg);

// Time average of the linear entropy over kicks [start, end] inclusive.
double window_mean_entropy(const FloquetOperator& op, const PureState& start,
                           long window_start, long window_end);
double window_mean_entropy(const FloquetOperator& op, const ProductState& start,
                           long window_start, long window_end);

// CSV writers (deterministic formatting; every file carries the config hash).
void write_trace_csv(const std::filesystem::path& path, const ExperimentConfig& cfg,
                     const EntanglementTrace& trace);
void write_rates_csv(const std::filesystem::path& path, const ExperimentConfig& cfg,
                     const std::vector<RateRow>& rows);
void write_asymptotic_csv(const std::filesystem::path& path, const ExperimentConfig& cfg,
                          const std::vector<AsymptoticRow>& rows);
void write_scaling_csv(const std::filesystem::path& path, const ExperimentConfig& cfg,
                       const std::vector<ScalingRow>& rows);
void write_correlation_csv(const std::filesystem::path& path, const ExperimentConfig& cfg,
                           const CorrelationTable& table);

// Records the config and a checksum of every artifact written by a run.
void write_manifest(const ExperimentConfig& cfg, const std::vector<std::filesystem::path>& files);

}  // namespace kicktop
