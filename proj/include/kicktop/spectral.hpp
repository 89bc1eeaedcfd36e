#pragma once

#include <vector>

#include "kicktop/floquet.hpp"

namespace kicktop {

struct EigenEntanglementEntry {
  Eigen::Index index;
  double phase;
  double linear_entropy;
};

struct EigenEntanglementReport {
  std::vector<EigenEntanglementEntry> entries;
  double mean = 0.0;
  double min_gap = 0.0;
  bool degenerate = false;  // values are advisory when set
};

EigenEntanglementReport eigenvector_entanglement(const Spectrum& spec, double gap_tol = 1e-10);

// Lower bound 2 * mean - 1 on the asymptotic entanglement of any initial
// state; only valid for nondegenerate spectra (throws DegeneracyError).
double asymptotic_lower_bound(const EigenEntanglementReport& report);

// Infinite-time average of the linear entropy for a given initial state,
// S = 1 - sum_ij p_i p_j Tr(rho_i rho_j) - sum_{i != j} p_i p_j T_ij with
// p_i = |<e_i|psi>|^2 and T_ij the cross-reduction trace. All pair traces
// are precomputed (Gram trick), so evaluate() is O(n^2) per state.
class AsymptoticKernel {
 public:
  explicit AsymptoticKernel(const Spectrum& spec, Eigen::Index max_product_dim = 256);

  double evaluate(const PureState& psi) const;

 private:
  Eigen::MatrixXcd vectors_adj_;
  Eigen::MatrixXd pair_sum_;       // Tr(rho_i rho_j) + T_ij
  Eigen::VectorXd diag_correct_;   // T_ii, excluded from the i != j sum
};

double asymptotic_entropy(const Spectrum& spec, const PureState& psi,
                          Eigen::Index max_product_dim = 256);

// rhs - lhs slack of the two trace inequalities behind the lower bound:
//   2 Tr[tr_2(|i><j|) tr_2(|j><i|)] <= Tr(rho_i^2) + Tr(rho_j^2)
//   2 Tr(rho_i rho_j)               <= Tr(rho_i^2) + Tr(rho_j^2)
struct InequalityMargins {
  double cross_margin;
  double product_margin;
};

InequalityMargins check_cross_inequalities(const PureState& ei, const PureState& ej,
                                           Eigen::Index d1, Eigen::Index d2);

}  // namespace kicktop
