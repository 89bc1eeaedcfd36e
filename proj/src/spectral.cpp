#include "kicktop/spectral.hpp"

#include <stdexcept>

#include "kicktop/entanglement.hpp"
#include "kicktop/errors.hpp"

namespace kicktop {

namespace {

using RowMajorMap = Eigen::Map<
    const Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;

RowMajorMap amplitude_matrix(const Eigen::MatrixXcd& vectors, Eigen::Index col,
                             Eigen::Index d1, Eigen::Index d2) {
  return {vectors.col(col).data(), d1, d2};
}

}  // namespace

EigenEntanglementReport eigenvector_entanglement(const Spectrum& spec, double gap_tol) {
  const Eigen::Index n = spec.vectors.cols();
  EigenEntanglementReport report;
  report.entries.reserve(static_cast<std::size_t>(n));
  report.min_gap = spec.min_gap;
  report.degenerate = spec.degenerate(gap_tol);
  double sum = 0.0;
  PureState psi;
  for (Eigen::Index i = 0; i < n; ++i) {
    psi.amp = spec.vectors.col(i);
    const double s = linear_entropy_of_state(psi, spec.d1, spec.d2);
    report.entries.push_back({i, spec.phases(i), s});
    sum += s;
  }
  report.mean = sum / static_cast<double>(n);
  return report;
}

double asymptotic_lower_bound(const EigenEntanglementReport& report) {
  if (report.degenerate)
    throw DegeneracyError("lower bound requires a nondegenerate spectrum");
  return 2.0 * report.mean - 1.0;
}

AsymptoticKernel::AsymptoticKernel(const Spectrum& spec, Eigen::Index max_product_dim) {
  const Eigen::Index n = spec.vectors.cols();
  const Eigen::Index d1 = spec.d1, d2 = spec.d2;
  if (n > max_product_dim)
    throw ResourceError("asymptotic kernel at dimension " + std::to_string(n) +
                        " exceeds cap " + std::to_string(max_product_dim) +
                        "; use time averaging instead");
  vectors_adj_ = spec.vectors.adjoint();

  // Vectorized reductions: row i of `left` is vec(C_i C_i^dag), row i of
  // `right` is vec(C_i^dag C_i). Then Tr(rho_i rho_j) = (left left^dag)_ij
  // and T_ij = Tr[(C_i C_j^dag)(C_j C_i^dag)] = (right right^dag)_ij.
  Eigen::MatrixXcd left(n, d1 * d1), right(n, d2 * d2);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto c = amplitude_matrix(spec.vectors, i, d1, d2);
    const Eigen::MatrixXcd l = c * c.adjoint();
    const Eigen::MatrixXcd r = c.adjoint() * c;
    left.row(i) = Eigen::Map<const Eigen::VectorXcd>(l.data(), l.size()).transpose();
    right.row(i) = Eigen::Map<const Eigen::VectorXcd>(r.data(), r.size()).transpose();
  }
  const Eigen::MatrixXd a = (left * left.adjoint()).real();
  const Eigen::MatrixXd b = (right * right.adjoint()).real();
  pair_sum_ = a + b;
  diag_correct_ = b.diagonal();
}

double AsymptoticKernel::evaluate(const PureState& psi) const {
  if (psi.dim() != vectors_adj_.cols())
    throw std::invalid_argument("state dimension does not match the spectrum");
  const Eigen::VectorXcd overlap = vectors_adj_ * psi.amp;
  const Eigen::VectorXd p = overlap.cwiseAbs2();
  return 1.0 - p.dot(pair_sum_ * p) + p.cwiseAbs2().dot(diag_correct_);
}

double asymptotic_entropy(const Spectrum& spec, const PureState& psi,
                          Eigen::Index max_product_dim) {
  return AsymptoticKernel(spec, max_product_dim).evaluate(psi);
}

InequalityMargins check_cross_inequalities(const PureState& ei, const PureState& ej,
                                           Eigen::Index d1, Eigen::Index d2) {
  if (ei.dim() != d1 * d2 || ej.dim() != d1 * d2)
    throw std::invalid_argument("state dimension does not match d1 * d2");
  const RowMajorMap ci{ei.amp.data(), d1, d2};
  const RowMajorMap cj{ej.amp.data(), d1, d2};
  const Eigen::MatrixXcd li = ci * ci.adjoint();
  const Eigen::MatrixXcd lj = cj * cj.adjoint();
  const Eigen::MatrixXcd cross = ci * cj.adjoint();
  const double rhs = li.squaredNorm() + lj.squaredNorm();
  const double cross_lhs = 2.0 * cross.squaredNorm();
  const double product_lhs = 2.0 * (li * lj).trace().real();
  return {rhs - cross_lhs, rhs - product_lhs};
}

}  // namespace kicktop
