#include "kicktop/entanglement.hpp"

#include <cmath>
#include <stdexcept>

namespace kicktop {

namespace {

void check_dims(const PureState& state, Eigen::Index d1, Eigen::Index d2) {
  if (d1 < 1 || d2 < 1) throw std::invalid_argument("subsystem dimensions must be positive");
  if (state.dim() != d1 * d2)
    throw std::invalid_argument("state dimension does not match d1 * d2");
}

// Row-major view of the flattened state as a d1 x d2 amplitude matrix C,
// so rho_1 = C C^dagger and rho_2 = (C^dagger C)^T.
Eigen::Map<const Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
amplitude_matrix(const PureState& state, Eigen::Index d1, Eigen::Index d2) {
  return {state.amp.data(), d1, d2};
}

}  // namespace

ReducedDensity partial_trace_second(const PureState& state, Eigen::Index d1, Eigen::Index d2) {
  check_dims(state, d1, d2);
  const auto c = amplitude_matrix(state, d1, d2);
  ReducedDensity rd;
  rd.d1 = d1;
  rd.d2 = d2;
  rd.rho = c * c.adjoint();
  return rd;
}

double subsystem_purity(const PureState& state, Eigen::Index d1, Eigen::Index d2) {
  check_dims(state, d1, d2);
  const auto c = amplitude_matrix(state, d1, d2);
  // Tr[(C C^dag)^2] = |C C^dag|_F^2 = |C^dag C|_F^2; use the smaller Gram.
  if (d1 <= d2) {
    Eigen::MatrixXcd g = c * c.adjoint();
    return g.squaredNorm();
  }
  Eigen::MatrixXcd g = c.adjoint() * c;
  return g.squaredNorm();
}

double linear_entropy(const ReducedDensity& rd) {
  return 1.0 - rd.rho.squaredNorm();
}

double linear_entropy_of_state(const PureState& state, Eigen::Index d1, Eigen::Index d2) {
  return 1.0 - subsystem_purity(state, d1, d2);
}

double von_neumann_entropy(const ReducedDensity& rd) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rd.rho, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("density matrix eigendecomposition failed");
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double p = es.eigenvalues()(i);
    if (p > 1e-15) s -= p * std::log2(p);
  }
  return s;
}

double statistical_limit(Eigen::Index d1, Eigen::Index d2) {
  if (d1 < 1 || d2 < 1) throw std::invalid_argument("subsystem dimensions must be positive");
  const double n1 = static_cast<double>(d1);
  const double n2 = static_cast<double>(d2);
  return 1.0 - (n1 + n2) / (n1 * n2 + 1.0);
}

double max_linear_entropy(Eigen::Index d1) {
  if (d1 < 1) throw std::invalid_argument("dimension must be positive");
  return 1.0 - 1.0 / static_cast<double>(d1);
}

}  // namespace kicktop
