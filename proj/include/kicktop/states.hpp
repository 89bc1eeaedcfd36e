#pragma once

#include <cstdint>

#include "kicktop/rng.hpp"
#include "kicktop/spin.hpp"
#include "kicktop/state.hpp"

namespace kicktop {

enum class EnsembleKind {
  su2_coherent,  // product of spin-coherent states, directions uniform on the sphere
  sud_random,    // product of Haar-random vectors in each top's full space
};

struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::sud_random;
  int count = 100;
  std::uint64_t seed = 1;
};

const char* ensemble_name(EnsembleKind kind);

// Uniform direction: cos(theta) uniform in [-1, 1], phi uniform in [0, 2pi).
SphericalAngles random_direction(RandomStream& rng);

// Haar-random state: normalized vector of iid complex Gaussians.
PureState sample_haar_state(Eigen::Index dim, RandomStream& rng);

// Alternative Haar construction (first column of Q from a QR-decomposed
// Ginibre matrix, phase-fixed); kept as a cross-check of the Gaussian route.
PureState sample_haar_state_qr(Eigen::Index dim, RandomStream& rng);

ProductState sample_product(const EnsembleSpec& spec, SpinQuantum j1, SpinQuantum j2,
                            std::uint64_t index);

}  // namespace kicktop
