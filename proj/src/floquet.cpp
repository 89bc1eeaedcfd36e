#include "kicktop/floquet.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "kicktop/errors.hpp"

namespace kicktop {

namespace {
constexpr std::complex<double> kImag{0.0, 1.0};
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

const char* coupling_scale_name(CouplingScale scale) {
  switch (scale) {
    case CouplingScale::geometric: return "geometric";
    case CouplingScale::first_spin: return "first";
    case CouplingScale::second_spin: return "second";
    case CouplingScale::arithmetic: return "arithmetic";
  }
  throw std::invalid_argument("unknown coupling scale");
}

double CoupledParams::effective_j() const {
  const double j1 = top1.spin.j();
  const double j2 = top2.spin.j();
  switch (scale) {
    case CouplingScale::geometric: return std::sqrt(j1 * j2);
    case CouplingScale::first_spin: return j1;
    case CouplingScale::second_spin: return j2;
    case CouplingScale::arithmetic: return 0.5 * (j1 + j2);
  }
  throw std::invalid_argument("unknown coupling scale");
}

Eigen::MatrixXcd single_top_step(const TopParams& top) {
  const SpinOperators ops = build_spin_operators(top.spin);
  const Eigen::Index d = top.spin.dim();
  const double j = top.spin.j();
  Eigen::MatrixXcd u = rotation_about_y(ops, top.rotation);
  if (top.kick != 0.0 && d > 1) {
    const double scale = top.kick / (2.0 * j);
    for (Eigen::Index r = 0; r < d; ++r) {
      const double m = j - static_cast<double>(r);
      u.row(r) *= std::exp(-kImag * (scale * m * m));
    }
  }
  return u;
}

FloquetOperator FloquetOperator::build(const CoupledParams& params, Eigen::Index max_product_dim) {
  const Eigen::Index d1 = params.top1.spin.dim();
  const Eigen::Index d2 = params.top2.spin.dim();
  if (d1 * d2 > max_product_dim)
    throw ResourceError("product dimension " + std::to_string(d1 * d2) +
                        " exceeds cap " + std::to_string(max_product_dim));
  if (params.epsilon != 0.0 && params.effective_j() == 0.0)
    throw std::invalid_argument("coupling requires nonzero spins");
  FloquetOperator op(params);
  op.u1_ = single_top_step(params.top1);
  op.u2_ = single_top_step(params.top2);
  op.phase_.resize(d1, d2);
  const double j1 = params.top1.spin.j();
  const double j2 = params.top2.spin.j();
  const double scale = params.epsilon == 0.0 ? 0.0 : params.epsilon / params.effective_j();
  for (Eigen::Index a = 0; a < d1; ++a) {
    const double m1 = j1 - static_cast<double>(a);
    for (Eigen::Index b = 0; b < d2; ++b) {
      const double m2 = j2 - static_cast<double>(b);
      op.phase_(a, b) = std::exp(-kImag * (scale * m1 * m2));
    }
  }
  return op;
}

const Eigen::MatrixXcd& FloquetOperator::full_matrix() const {
  if (!full_) {
    const Eigen::Index n1 = d1(), n2 = d2(), n = n1 * n2;
    Eigen::MatrixXcd m(n, n);
    // Full operator = diag(vec(phase)) * (U1 kron U2) in the row-major
    // flattening |a> x |b>  ->  index a * d2 + b.
    for (Eigen::Index a = 0; a < n1; ++a)
      for (Eigen::Index c = 0; c < n1; ++c)
        for (Eigen::Index b = 0; b < n2; ++b)
          for (Eigen::Index d = 0; d < n2; ++d)
            m(a * n2 + b, c * n2 + d) = phase_(a, b) * u1_(a, c) * u2_(b, d);
    full_ = std::move(m);
  }
  return *full_;
}

void Evolver::load(const PureState& start) {
  const Eigen::Index n1 = op_->d1(), n2 = op_->d2();
  if (start.dim() != n1 * n2)
    throw std::invalid_argument("state dimension does not match the operator");
  c_.resize(n1, n2);
  for (Eigen::Index a = 0; a < n1; ++a) c_.row(a) = start.amp.segment(a * n2, n2).transpose();
  t_.resize(n1, n2);
}

Evolver::Evolver(const FloquetOperator& op, const PureState& start) : op_(&op) { load(start); }

Evolver::Evolver(const FloquetOperator& op, const ProductState& start) : op_(&op) {
  load(flatten(start));
}

void Evolver::step() {
  t_.noalias() = op_->u1() * c_;
  c_.noalias() = t_ * op_->u2().transpose();
  c_.array() *= op_->coupling_phase().array();
  ++kicks_;
}

void Evolver::advance(long kicks) {
  for (long i = 0; i < kicks; ++i) step();
}

double Evolver::linear_entropy() const {
  if (c_.rows() <= c_.cols())
    gram_.noalias() = c_ * c_.adjoint();
  else
    gram_.noalias() = c_.adjoint() * c_;
  return 1.0 - gram_.squaredNorm();
}

PureState Evolver::state() const {
  PureState out;
  out.amp.resize(c_.size());
  for (Eigen::Index a = 0; a < c_.rows(); ++a)
    out.amp.segment(a * c_.cols(), c_.cols()) = c_.row(a).transpose();
  return out;
}

PureState FloquetOperator::evolve(const PureState& start, long kicks) const {
  Evolver ev(*this, start);
  ev.advance(kicks);
  return ev.state();
}

PureState FloquetOperator::evolve(const ProductState& start, long kicks) const {
  return evolve(flatten(start), kicks);
}

Spectrum diagonalize(const FloquetOperator& op, Eigen::Index max_dim) {
  const Eigen::Index n = op.dim();
  if (n > max_dim)
    throw ResourceError("diagonalization of dimension " + std::to_string(n) +
                        " exceeds cap " + std::to_string(max_dim) +
                        "; use time averaging instead");
  Eigen::MatrixXcd a = op.full_matrix();  // zgeev overwrites its input
  Eigen::VectorXcd w(n);
  Eigen::MatrixXcd v(n, n);
  const lapack_int info = LAPACKE_zgeev(
      LAPACK_COL_MAJOR, 'N', 'V', static_cast<lapack_int>(n),
      reinterpret_cast<lapack_complex_double*>(a.data()), static_cast<lapack_int>(n),
      reinterpret_cast<lapack_complex_double*>(w.data()), nullptr, 1,
      reinterpret_cast<lapack_complex_double*>(v.data()), static_cast<lapack_int>(n));
  if (info != 0)
    throw std::runtime_error("zgeev failed to converge (info = " + std::to_string(info) + ")");

  // Sort by eigenphase in (-pi, pi]; fix each eigenvector's gauge by making
  // its largest component real and positive.
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  Eigen::VectorXd phases(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double p = std::arg(w(i));
    if (p <= -std::numbers::pi) p += kTwoPi;
    phases(i) = p;
  }
  std::sort(order.begin(), order.end(),
            [&](Eigen::Index x, Eigen::Index y) { return phases(x) < phases(y); });

  Spectrum spec;
  spec.d1 = op.d1();
  spec.d2 = op.d2();
  spec.phases.resize(n);
  spec.vectors.resize(n, n);
  for (Eigen::Index idx = 0; idx < n; ++idx) {
    const Eigen::Index src = order[static_cast<std::size_t>(idx)];
    spec.phases(idx) = phases(src);
    Eigen::Index imax = 0;
    v.col(src).cwiseAbs().maxCoeff(&imax);
    const std::complex<double> pivot = v(imax, src);
    spec.vectors.col(idx) = v.col(src) * (std::conj(pivot) / std::abs(pivot));
    spec.vectors.col(idx).normalize();
  }

  spec.min_gap = kTwoPi;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double next = (i + 1 < n) ? spec.phases(i + 1) : spec.phases(0) + kTwoPi;
    spec.min_gap = std::min(spec.min_gap, next - spec.phases(i));
  }

  // Residual check ||U e_i - lambda_i e_i||.
  Eigen::MatrixXcd resid = op.full_matrix() * spec.vectors;
  for (Eigen::Index i = 0; i < n; ++i)
    resid.col(i) -= std::exp(kImag * spec.phases(i)) * spec.vectors.col(i);
  spec.max_residual = resid.colwise().norm().maxCoeff();
  if (spec.max_residual > 1e-8)
    throw std::runtime_error("eigenvector residual " + std::to_string(spec.max_residual) +
                             " exceeds 1e-8");
  return spec;
}

PureState evolve_by_spectrum(const Spectrum& spec, const PureState& start, long kicks) {
  if (start.dim() != spec.vectors.rows())
    throw std::invalid_argument("state dimension does not match the spectrum");
  Eigen::VectorXcd coeff = spec.vectors.adjoint() * start.amp;
  for (Eigen::Index i = 0; i < coeff.size(); ++i)
    coeff(i) *= std::exp(kImag * (static_cast<double>(kicks) * spec.phases(i)));
  PureState out;
  out.amp = spec.vectors * coeff;
  return out;
}

Eigen::MatrixXcd heisenberg_jz(const TopParams& top, int kicks) {
  if (kicks < 0) throw std::invalid_argument("kick count must be nonnegative");
  const SpinOperators ops = build_spin_operators(top.spin);
  const Eigen::MatrixXcd u = single_top_step(top);
  Eigen::MatrixXcd a = ops.jz;
  for (int n = 0; n < kicks; ++n) a = u.adjoint() * a * u;
  return a;
}

}  // namespace kicktop
