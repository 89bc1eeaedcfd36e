#include "kicktop/states.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kicktop {

const char* ensemble_name(EnsembleKind kind) {
  switch (kind) {
    case EnsembleKind::su2_coherent: return "su2";
    case EnsembleKind::sud_random: return "sud";
  }
  throw std::invalid_argument("unknown ensemble kind");
}

SphericalAngles random_direction(RandomStream& rng) {
  const double c = rng.uniform(-1.0, 1.0);
  double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
  if (phi >= 2.0 * std::numbers::pi) phi = 0.0;
  return SphericalAngles(std::acos(c), phi);
}

PureState sample_haar_state(Eigen::Index dim, RandomStream& rng) {
  if (dim < 1) throw std::invalid_argument("dimension must be positive");
  PureState out;
  out.amp.resize(dim);
  for (Eigen::Index i = 0; i < dim; ++i) out.amp(i) = rng.complex_normal();
  out.normalize();
  return out;
}

PureState sample_haar_state_qr(Eigen::Index dim, RandomStream& rng) {
  if (dim < 1) throw std::invalid_argument("dimension must be positive");
  Eigen::MatrixXcd g(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c)
    for (Eigen::Index r = 0; r < dim; ++r) g(r, c) = rng.complex_normal();
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  // Fix the gauge with the sign of R's diagonal so the column is Haar.
  const std::complex<double> r00 = qr.matrixQR()(0, 0);
  const double mag = std::abs(r00);
  PureState out;
  out.amp = q.col(0);
  if (mag > 0.0) out.amp *= r00 / mag;
  out.normalize();
  return out;
}

ProductState sample_product(const EnsembleSpec& spec, SpinQuantum j1, SpinQuantum j2,
                            std::uint64_t index) {
  RandomStream rng = RandomStream::derive(spec.seed, index);
  ProductState p;
  if (spec.kind == EnsembleKind::su2_coherent) {
    const SphericalAngles a1 = random_direction(rng);
    const SphericalAngles a2 = random_direction(rng);
    p.first = coherent_state(j1, a1);
    p.second = coherent_state(j2, a2);
  } else {
    p.first = sample_haar_state(j1.dim(), rng);
    p.second = sample_haar_state(j2.dim(), rng);
  }
  return p;
}

}  // namespace kicktop
