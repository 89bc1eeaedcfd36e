#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "kicktop/floquet.hpp"
#include "kicktop/spectral.hpp"

namespace kicktop {

// Per-eigenvector data worth keeping once a Floquet operator has been
// diagonalized: eigenphases, reduction entropies and the minimal phase gap.
struct SpectrumSummary {
  std::vector<double> phases;
  std::vector<double> entropies;
  double min_gap = 0.0;

  double mean_entropy() const;
};

SpectrumSummary summarize(const Spectrum& spec);

// Canonical parameter string and derived cache key (stable across runs).
std::string spectrum_cache_params(const CoupledParams& params);
std::string spectrum_cache_key(const CoupledParams& params);

std::filesystem::path spectrum_cache_path(const std::filesystem::path& dir,
                                          const CoupledParams& params);

// Returns the cached summary only when the stored parameter line matches.
std::optional<SpectrumSummary> load_spectrum_cache(const std::filesystem::path& dir,
                                                   const CoupledParams& params);

void store_spectrum_cache(const std::filesystem::path& dir, const CoupledParams& params,
                          const SpectrumSummary& summary);

}  // namespace kicktop
