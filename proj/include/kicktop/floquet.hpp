#pragma once

#include <Eigen/Dense>
#include <numbers>
#include <optional>

#include "kicktop/spin.hpp"
#include "kicktop/state.hpp"

namespace kicktop {

// One top: kick strength k enters as exp(-i k J_z^2 / 2j) after the free
// rotation exp(-i * rotation * J_y).
struct TopParams {
  SpinQuantum spin;
  double kick = 0.0;
  double rotation = 0.5 * std::numbers::pi;
};

// Spin scale used to normalize the coupling, epsilon * Jz1 * Jz2 / j_eff.
enum class CouplingScale { geometric, first_spin, second_spin, arithmetic };

const char* coupling_scale_name(CouplingScale scale);

struct CoupledParams {
  TopParams top1;
  TopParams top2;
  double epsilon = 0.0;
  CouplingScale scale = CouplingScale::geometric;

  double effective_j() const;
};

// Single-top one-period operator exp(-i k Jz^2 / 2j) exp(-i rotation Jy).
Eigen::MatrixXcd single_top_step(const TopParams& top);

// One driving period of the coupled pair: (U1 x U2) followed by the diagonal
// coupling phase exp(-i epsilon m1 m2 / j_eff). Factored storage; the full
// d1*d2 matrix is only materialized on demand (diagonalization).
class FloquetOperator {
 public:
  static FloquetOperator build(const CoupledParams& params, Eigen::Index max_product_dim = 8192);

  const CoupledParams& params() const { return params_; }
  Eigen::Index d1() const { return u1_.rows(); }
  Eigen::Index d2() const { return u2_.rows(); }
  Eigen::Index dim() const { return d1() * d2(); }

  const Eigen::MatrixXcd& u1() const { return u1_; }
  const Eigen::MatrixXcd& u2() const { return u2_; }
  // Unit-modulus coupling phases, entry (a, b) for basis state |a> x |b>.
  const Eigen::MatrixXcd& coupling_phase() const { return phase_; }

  PureState evolve(const PureState& start, long kicks) const;
  PureState evolve(const ProductState& start, long kicks) const;

  bool full_matrix_materialized() const { return full_.has_value(); }
  const Eigen::MatrixXcd& full_matrix() const;

 private:
  CoupledParams params_;
  Eigen::MatrixXcd u1_, u2_, phase_;
  mutable std::optional<Eigen::MatrixXcd> full_;

  explicit FloquetOperator(const CoupledParams& params) : params_(params) {}
};

// Kick-by-kick evolution with cheap per-kick observables. Holds the state as
// the d1 x d2 amplitude matrix so one period is two small matrix products
// plus the elementwise coupling phase.
class Evolver {
 public:
  Evolver(const FloquetOperator& op, const PureState& start);
  Evolver(const FloquetOperator& op, const ProductState& start);

  void step();
  void advance(long kicks);
  long kicks_done() const { return kicks_; }

  double norm() const { return c_.norm(); }
  // Linear entropy of either reduction via the smaller-side Gram matrix.
  double linear_entropy() const;
  PureState state() const;

 private:
  const FloquetOperator* op_;
  Eigen::MatrixXcd c_, t_;
  mutable Eigen::MatrixXcd gram_;
  long kicks_ = 0;

  void load(const PureState& start);
};

// Eigen decomposition of the one-period operator: sorted eigenphases in
// (-pi, pi], phase-fixed eigenvector columns, minimal (circular) phase gap.
struct Spectrum {
  Eigen::VectorXd phases;
  Eigen::MatrixXcd vectors;
  double min_gap = 0.0;
  double max_residual = 0.0;
  Eigen::Index d1 = 0;
  Eigen::Index d2 = 0;

  bool degenerate(double tol = 1e-10) const { return min_gap < tol; }
};

// Dense nonsymmetric eigensolve of the materialized operator (LAPACK zgeev).
// Throws ResourceError above max_dim and a diagnostic error when the solver
// fails to converge or residuals exceed 1e-8.
Spectrum diagonalize(const FloquetOperator& op, Eigen::Index max_dim = 4096);

// Exact propagation by spectral resolution; cross-check for evolve().
PureState evolve_by_spectrum(const Spectrum& spec, const PureState& start, long kicks);

// Heisenberg picture J_z(n) = U^dag^n J_z U^n for a single top.
Eigen::MatrixXcd heisenberg_jz(const TopParams& top, int kicks);

}  // namespace kicktop
