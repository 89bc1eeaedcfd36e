#include "kicktop/correlations.hpp"

#include <stdexcept>

namespace kicktop {

HeisenbergZ::HeisenbergZ(const TopParams& top) : top_(top), step_(single_top_step(top)) {
  cache_.push_back(build_spin_operators(top.spin).jz / top.spin.j());
}

const Eigen::MatrixXcd& HeisenbergZ::at(int n) {
  if (n < 0) throw std::invalid_argument("kick index must be nonnegative");
  while (static_cast<int>(cache_.size()) <= n)
    cache_.push_back(step_.adjoint() * cache_.back() * step_);
  return cache_[static_cast<std::size_t>(n)];
}

std::complex<double> correlation(HeisenbergZ& hz, const PureState& psi, int n, int m) {
  const Eigen::VectorXcd vn = hz.at(n) * psi.amp;
  const Eigen::VectorXcd vm = hz.at(m) * psi.amp;
  const std::complex<double> mean_n = psi.amp.dot(vn);
  const std::complex<double> mean_m = psi.amp.dot(vm);
  return vn.dot(vm) - mean_n * mean_m;
}

namespace {

// Per-state tables for one top: sym(n, m) = Re<z(n) z(m)> and mean(n).
void single_top_tables(HeisenbergZ& hz, const PureState& psi, int horizon,
                       Eigen::MatrixXd& sym, Eigen::VectorXd& mean) {
  const int nt = horizon + 1;
  Eigen::MatrixXcd v(psi.dim(), nt);
  for (int n = 0; n < nt; ++n) v.col(n) = hz.at(n) * psi.amp;
  mean.resize(nt);
  for (int n = 0; n < nt; ++n) mean(n) = psi.amp.dot(v.col(n)).real();
  sym = (v.adjoint() * v).real();
}

CorrelationTable accumulate(const CoupledParams& params, AveragingMode mode, int count,
                            std::uint64_t seed, int horizon, ProductOrder order,
                            const ProductState* fixed) {
  if (horizon < 1) throw std::invalid_argument("horizon must be at least 1");
  const int nt = horizon + 1;
  HeisenbergZ hz1(params.top1), hz2(params.top2);

  Eigen::MatrixXd sym1 = Eigen::MatrixXd::Zero(nt, nt), sym2 = sym1;
  Eigen::MatrixXd mm1 = sym1, mm2 = sym1;  // <z(n)><z(m)> accumulators
  Eigen::VectorXd mu1 = Eigen::VectorXd::Zero(nt), mu2 = mu1;

  const int members = fixed ? 1 : count;
  if (members < 1) throw std::invalid_argument("ensemble count must be positive");
  EnsembleSpec spec;
  spec.kind = mode == AveragingMode::su2_ensemble ? EnsembleKind::su2_coherent
                                                  : EnsembleKind::sud_random;
  spec.count = members;
  spec.seed = seed;

  Eigen::MatrixXd s(nt, nt);
  Eigen::VectorXd m(nt);
  for (int i = 0; i < members; ++i) {
    const ProductState p =
        fixed ? *fixed : sample_product(spec, params.top1.spin, params.top2.spin,
                                        static_cast<std::uint64_t>(i));
    single_top_tables(hz1, p.first, horizon, s, m);
    sym1 += s;
    mm1 += m * m.transpose();
    mu1 += m;
    single_top_tables(hz2, p.second, horizon, s, m);
    sym2 += s;
    mm2 += m * m.transpose();
    mu2 += m;
  }
  const double inv = 1.0 / static_cast<double>(members);
  sym1 *= inv;
  sym2 *= inv;
  mm1 *= inv;
  mm2 *= inv;
  mu1 *= inv;
  mu2 *= inv;

  CorrelationTable table;
  table.horizon = horizon;
  table.mode = fixed ? AveragingMode::single_state : mode;
  table.order = order;
  if (order == ProductOrder::average_of_products) {
    table.c1 = sym1 - mm1;
    table.c2 = sym2 - mm2;
  } else {
    table.c1 = sym1 - mu1 * mu1.transpose();
    table.c2 = sym2 - mu2 * mu2.transpose();
  }
  table.d = table.c1.cwiseProduct(table.c2);
  return table;
}

}  // namespace

CorrelationTable correlation_table(const CoupledParams& params, const ProductState& start,
                                   int horizon) {
  return accumulate(params, AveragingMode::single_state, 1, 0, horizon,
                    ProductOrder::average_of_products, &start);
}

CorrelationTable correlation_table(const CoupledParams& params, AveragingMode mode, int count,
                                   std::uint64_t seed, int horizon, ProductOrder order) {
  if (mode == AveragingMode::single_state)
    throw std::invalid_argument("single_state mode requires an explicit state");
  return accumulate(params, mode, count, seed, horizon, order, nullptr);
}

double perturbative_entropy(const CoupledParams& params, const CorrelationTable& table, int t) {
  if (t < 1 || t > table.horizon)
    throw std::invalid_argument("time must lie within the table horizon");
  const double sum = table.d.block(1, 1, t, t).sum();
  const double j1 = params.top1.spin.j();
  const double j2 = params.top2.spin.j();
  return 2.0 * params.epsilon * params.epsilon * j1 * j2 * sum;
}

double strong_chaos_rate(const CoupledParams& params) {
  const double j1 = params.top1.spin.j();
  const double j2 = params.top2.spin.j();
  return (2.0 / 9.0) * params.epsilon * params.epsilon * j1 * j2;
}

}  // namespace kicktop
