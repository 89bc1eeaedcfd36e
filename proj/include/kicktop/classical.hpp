#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>

#include "kicktop/rng.hpp"

namespace kicktop {

// Point on the unit sphere (classical limit of J/j).
struct ClassicalState {
  double x = 0.0, y = 0.0, z = 1.0;

  ClassicalState() = default;
  ClassicalState(double x_, double y_, double z_);
  static ClassicalState from_angles(double theta, double phi);
  static ClassicalState random(RandomStream& rng);

  double norm() const;
  void renormalize();
};

// One period of the classical kicked-top map,
//   X' = Z cos(kX) + Y sin(kX), Y' = -Z sin(kX) + Y cos(kX), Z' = -X.
ClassicalState classical_step(const ClassicalState& s, double k);

// Coupled pair; the kick angle of each top picks up epsilon times the other
// top's X. Both outputs are renormalized against drift.
std::pair<ClassicalState, ClassicalState> coupled_classical_step(const ClassicalState& s1,
                                                                 const ClassicalState& s2,
                                                                 double k, double epsilon);

// Jacobian of classical_step at s (tangent map in ambient coordinates).
Eigen::Matrix3d classical_jacobian(const ClassicalState& s, double k);

struct LyapunovEstimate {
  double lambda = 0.0;
  double stderr_mean = 0.0;  // standard error over initial points
  int n_points = 0;
  int n_steps = 0;
};

// Largest Lyapunov exponent of the single-top map, averaged over random
// initial points: tangent vectors are propagated by the Jacobian, projected
// to the local tangent plane and periodically renormalized.
LyapunovEstimate lyapunov_exponent(double k, int n_points, int n_steps, std::uint64_t seed,
                                   int transient = 100, int renorm_interval = 10);

}  // namespace kicktop
