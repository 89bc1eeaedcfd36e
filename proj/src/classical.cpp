#include "kicktop/classical.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace kicktop {

ClassicalState::ClassicalState(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {
  const double n = norm();
  if (!(n > 0.0) || !std::isfinite(n))
    throw std::invalid_argument("classical state must have nonzero finite norm");
  x /= n;
  y /= n;
  z /= n;
}

ClassicalState ClassicalState::from_angles(double theta, double phi) {
  return ClassicalState(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                        std::cos(theta));
}

ClassicalState ClassicalState::random(RandomStream& rng) {
  const double z = rng.uniform(-1.0, 1.0);
  const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return ClassicalState(r * std::cos(phi), r * std::sin(phi), z);
}

double ClassicalState::norm() const { return std::sqrt(x * x + y * y + z * z); }

void ClassicalState::renormalize() {
  const double n = norm();
  x /= n;
  y /= n;
  z /= n;
}

namespace {

// Rotation about y by pi/2 followed by torsion about z through angle `a`
// (evaluated with the pre-step X, as in the map's closed form).
ClassicalState kicked_point(const ClassicalState& s, double a) {
  ClassicalState out;
  out.x = s.z * std::cos(a) + s.y * std::sin(a);
  out.y = -s.z * std::sin(a) + s.y * std::cos(a);
  out.z = -s.x;
  out.renormalize();
  return out;
}

}  // namespace

ClassicalState classical_step(const ClassicalState& s, double k) {
  return kicked_point(s, k * s.x);
}

std::pair<ClassicalState, ClassicalState> coupled_classical_step(const ClassicalState& s1,
                                                                 const ClassicalState& s2,
                                                                 double k, double epsilon) {
  const double a1 = k * s1.x + epsilon * s2.x;
  const double a2 = k * s2.x + epsilon * s1.x;
  return {kicked_point(s1, a1), kicked_point(s2, a2)};
}

Eigen::Matrix3d classical_jacobian(const ClassicalState& s, double k) {
  const double c = std::cos(k * s.x);
  const double sn = std::sin(k * s.x);
  Eigen::Matrix3d jac;
  jac << k * (-s.z * sn + s.y * c), sn, c,
         -k * (s.z * c + s.y * sn), c, -sn,
         -1.0, 0.0, 0.0;
  return jac;
}

LyapunovEstimate lyapunov_exponent(double k, int n_points, int n_steps, std::uint64_t seed,
                                   int transient, int renorm_interval) {
  if (n_points < 1 || n_steps < 1 || renorm_interval < 1)
    throw std::invalid_argument("lyapunov_exponent requires positive counts");
  std::vector<double> lambdas(static_cast<std::size_t>(n_points));
  for (int p = 0; p < n_points; ++p) {
    RandomStream rng = RandomStream::derive(seed, static_cast<std::uint64_t>(p));
    ClassicalState s = ClassicalState::random(rng);
    for (int t = 0; t < transient; ++t) s = classical_step(s, k);

    // Random unit tangent vector orthogonal to s.
    Eigen::Vector3d pos(s.x, s.y, s.z);
    Eigen::Vector3d v(rng.normal(), rng.normal(), rng.normal());
    v -= v.dot(pos) * pos;
    if (v.norm() < 1e-12) v = pos.unitOrthogonal();
    v.normalize();

    double log_sum = 0.0;
    for (int t = 0; t < n_steps; ++t) {
      v = classical_jacobian(s, k) * v;
      s = classical_step(s, k);
      pos = Eigen::Vector3d(s.x, s.y, s.z);
      v -= v.dot(pos) * pos;  // stay in the tangent plane of the sphere
      if ((t + 1) % renorm_interval == 0 || t + 1 == n_steps) {
        const double n = v.norm();
        log_sum += std::log(n);
        v /= n;
      }
    }
    lambdas[static_cast<std::size_t>(p)] = log_sum / static_cast<double>(n_steps);
  }

  LyapunovEstimate est;
  est.n_points = n_points;
  est.n_steps = n_steps;
  double mean = 0.0;
  for (double l : lambdas) mean += l;
  mean /= static_cast<double>(n_points);
  double var = 0.0;
  for (double l : lambdas) var += (l - mean) * (l - mean);
  est.lambda = mean;
  est.stderr_mean = n_points > 1
                        ? std::sqrt(var / (static_cast<double>(n_points) *
                                           static_cast<double>(n_points - 1)))
                        : 0.0;
  return est;
}

}  // namespace kicktop
