#pragma once

#include <Eigen/Dense>

#include "kicktop/state.hpp"

namespace kicktop {

// Reduced density matrix of subsystem 1 after tracing out subsystem 2.
struct ReducedDensity {
  Eigen::MatrixXcd rho;
  Eigen::Index d1 = 0;
  Eigen::Index d2 = 0;  // dimension traced out
};

// State must be a flattened product-space vector of dimension d1*d2.
ReducedDensity partial_trace_second(const PureState& state, Eigen::Index d1, Eigen::Index d2);

// Tr(rho^2) of either reduction, computed from the amplitude matrix via the
// smaller-side Gram matrix (never builds rho when d is large).
double subsystem_purity(const PureState& state, Eigen::Index d1, Eigen::Index d2);

double linear_entropy(const ReducedDensity& rd);
double linear_entropy_of_state(const PureState& state, Eigen::Index d1, Eigen::Index d2);

// Shannon entropy (base 2) of the reduction's spectrum.
double von_neumann_entropy(const ReducedDensity& rd);

// Ensemble average of the linear entropy over random product states,
// 1 - (d1 + d2) / (d1 * d2 + 1).
double statistical_limit(Eigen::Index d1, Eigen::Index d2);

// Upper bound 1 - 1/d1 attained by the maximally mixed reduction.
double max_linear_entropy(Eigen::Index d1);

}  // namespace kicktop
