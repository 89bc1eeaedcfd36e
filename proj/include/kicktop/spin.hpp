#pragma once

#include <Eigen/Dense>

#include "kicktop/state.hpp"

namespace kicktop {

// Spin quantum number j with 2j a nonnegative integer. Dimension is 2j+1.
class SpinQuantum {
 public:
  explicit SpinQuantum(double j);

  double j() const { return 0.5 * twice_j_; }
  int twice_j() const { return twice_j_; }
  Eigen::Index dim() const { return twice_j_ + 1; }

 private:
  int twice_j_;
};

// Polar/azimuthal direction on the sphere, theta in [0, pi], phi in [0, 2pi).
struct SphericalAngles {
  SphericalAngles(double theta_, double phi_);
  double theta;
  double phi;
};

// Angular momentum matrices in the basis m = j, j-1, ..., -j (so |j, j> is
// the first basis vector and J_z is diagonal with descending entries).
struct SpinOperators {
  SpinQuantum spin;
  Eigen::MatrixXcd jx, jy, jz;
};

SpinOperators build_spin_operators(SpinQuantum spin);

// exp(-i * angle * J_y), computed through the eigendecomposition of J_y.
Eigen::MatrixXcd rotation_about_y(const SpinOperators& ops, double angle);

// Spin-coherent state pointing along (theta, phi): the rotated highest-weight
// state, with the m = j amplitude real and nonnegative.
PureState coherent_state(SpinQuantum spin, const SphericalAngles& dir);

}  // namespace kicktop
