#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "kicktop/floquet.hpp"
#include "kicktop/states.hpp"

namespace kicktop {

// Lazily grown cache of the scaled Heisenberg operators z(n) = J_z(n) / j
// for one uncoupled top.
class HeisenbergZ {
 public:
  explicit HeisenbergZ(const TopParams& top);

  const Eigen::MatrixXcd& at(int n);
  const TopParams& top() const { return top_; }

 private:
  TopParams top_;
  Eigen::MatrixXcd step_;
  std::vector<Eigen::MatrixXcd> cache_;
};

// Two-time covariance <z(n) z(m)> - <z(n)><z(m)> in a single-top state.
std::complex<double> correlation(HeisenbergZ& hz, const PureState& psi, int n, int m);

enum class AveragingMode { single_state, su2_ensemble, sud_ensemble };

// Whether ensemble averaging is applied to whole covariances (the default,
// matching the weak-coupling derivation) or means are averaged first; the
// latter is a diagnostic alternative.
enum class ProductOrder { average_of_products, product_of_averages };

// Symmetrized (real) correlation tables of both uncoupled tops up to a time
// horizon, plus their product D(n, m) = C1(n, m) * C2(n, m). Indices run
// 0..horizon.
struct CorrelationTable {
  int horizon = 0;
  AveragingMode mode = AveragingMode::single_state;
  ProductOrder order = ProductOrder::average_of_products;
  Eigen::MatrixXd c1, c2, d;
};

CorrelationTable correlation_table(const CoupledParams& params, const ProductState& start,
                                   int horizon);
CorrelationTable correlation_table(const CoupledParams& params, AveragingMode mode, int count,
                                   std::uint64_t seed, int horizon,
                                   ProductOrder order = ProductOrder::average_of_products);

// Weak-coupling entanglement estimate after t kicks,
// S(t) = 2 epsilon^2 j1 j2 sum_{n,m=1..t} D(n, m).
double perturbative_entropy(const CoupledParams& params, const CorrelationTable& table, int t);

// Fully chaotic limit of the growth rate, (2/9) epsilon^2 j1 j2 per kick.
double strong_chaos_rate(const CoupledParams& params);

}  // namespace kicktop
