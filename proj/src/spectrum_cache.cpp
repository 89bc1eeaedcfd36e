#include "kicktop/spectrum_cache.hpp"

#include <sstream>
#include <stdexcept>

#include "kicktop/entanglement.hpp"
#include "kicktop/io.hpp"

namespace kicktop {

double SpectrumSummary::mean_entropy() const {
  double sum = 0.0;
  for (double s : entropies) sum += s;
  return entropies.empty() ? 0.0 : sum / static_cast<double>(entropies.size());
}

SpectrumSummary summarize(const Spectrum& spec) {
  SpectrumSummary out;
  out.min_gap = spec.min_gap;
  const Eigen::Index n = spec.vectors.cols();
  out.phases.resize(static_cast<std::size_t>(n));
  out.entropies.resize(static_cast<std::size_t>(n));
  PureState psi;
  for (Eigen::Index i = 0; i < n; ++i) {
    psi.amp = spec.vectors.col(i);
    out.phases[static_cast<std::size_t>(i)] = spec.phases(i);
    out.entropies[static_cast<std::size_t>(i)] = linear_entropy_of_state(psi, spec.d1, spec.d2);
  }
  return out;
}

std::string spectrum_cache_params(const CoupledParams& p) {
  std::ostringstream ss;
  ss << "v=" << kVersion << " j1=" << fmt_full(p.top1.spin.j()) << " k1=" << fmt_full(p.top1.kick)
     << " rot1=" << fmt_full(p.top1.rotation) << " j2=" << fmt_full(p.top2.spin.j())
     << " k2=" << fmt_full(p.top2.kick) << " rot2=" << fmt_full(p.top2.rotation)
     << " epsilon=" << fmt_full(p.epsilon) << " scale=" << coupling_scale_name(p.scale);
  return ss.str();
}

std::string spectrum_cache_key(const CoupledParams& params) {
  return hex64(fnv1a64(spectrum_cache_params(params)));
}

std::filesystem::path spectrum_cache_path(const std::filesystem::path& dir,
                                          const CoupledParams& params) {
  return dir / ("spectrum_" + spectrum_cache_key(params) + ".csv");
}

std::optional<SpectrumSummary> load_spectrum_cache(const std::filesystem::path& dir,
                                                   const CoupledParams& params) {
  const auto content = read_file(spectrum_cache_path(dir, params));
  if (!content) return std::nullopt;
  std::istringstream in(*content);
  std::string line;
  SpectrumSummary out;
  bool params_ok = false, header_seen = false;
  const std::string want = spectrum_cache_params(params);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.rfind("# params ", 0) == 0) params_ok = line.substr(9) == want;
      if (line.rfind("# min_gap ", 0) == 0) out.min_gap = std::stod(line.substr(10));
      continue;
    }
    if (!header_seen) {  // column header
      header_seen = true;
      continue;
    }
    const auto f = split(line, ',');
    if (f.size() != 3) return std::nullopt;
    out.phases.push_back(std::stod(f[1]));
    out.entropies.push_back(std::stod(f[2]));
  }
  if (!params_ok || out.phases.empty()) return std::nullopt;
  return out;
}

void store_spectrum_cache(const std::filesystem::path& dir, const CoupledParams& params,
                          const SpectrumSummary& summary) {
  std::ostringstream ss;
  ss << "# params " << spectrum_cache_params(params) << "\n";
  ss << "# min_gap " << fmt_full(summary.min_gap) << "\n";
  ss << "index,phase,linear_entropy\n";
  for (std::size_t i = 0; i < summary.phases.size(); ++i)
    ss << i << ',' << fmt_full(summary.phases[i]) << ',' << fmt_full(summary.entropies[i])
       << "\n";
  write_file_atomic(spectrum_cache_path(dir, params), ss.str());
}

}  // namespace kicktop
