#include "kicktop/spin.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kicktop {

namespace {
constexpr std::complex<double> kImag{0.0, 1.0};
}

SpinQuantum::SpinQuantum(double j) {
  const double tj = 2.0 * j;
  const double rounded = std::round(tj);
  if (!(j >= 0.0) || std::abs(tj - rounded) > 1e-9 || rounded > 1e6)
    throw std::invalid_argument("spin quantum number must satisfy 2j = 0, 1, 2, ...");
  twice_j_ = static_cast<int>(rounded);
}

SphericalAngles::SphericalAngles(double theta_, double phi_) : theta(theta_), phi(phi_) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi))
    throw std::invalid_argument("theta must lie in [0, pi]");
  if (!(phi >= 0.0 && phi < 2.0 * std::numbers::pi))
    throw std::invalid_argument("phi must lie in [0, 2pi)");
}

SpinOperators build_spin_operators(SpinQuantum spin) {
  const Eigen::Index d = spin.dim();
  const double j = spin.j();
  SpinOperators ops{spin, Eigen::MatrixXcd::Zero(d, d), Eigen::MatrixXcd::Zero(d, d),
                    Eigen::MatrixXcd::Zero(d, d)};
  for (Eigen::Index r = 0; r < d; ++r) ops.jz(r, r) = j - static_cast<double>(r);
  // J+ couples |j, m> to |j, m+1>; row r-1 holds m+1 = j-r+1.
  for (Eigen::Index r = 1; r < d; ++r) {
    const double m = j - static_cast<double>(r);
    const double c = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
    ops.jx(r - 1, r) += 0.5 * c;
    ops.jx(r, r - 1) += 0.5 * c;
    ops.jy(r - 1, r) += -0.5 * kImag * c;
    ops.jy(r, r - 1) += 0.5 * kImag * c;
  }
  return ops;
}

Eigen::MatrixXcd rotation_about_y(const SpinOperators& ops, double angle) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(ops.jy);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("J_y eigendecomposition failed");
  const Eigen::Index d = ops.spin.dim();
  Eigen::VectorXcd phases(d);
  for (Eigen::Index i = 0; i < d; ++i)
    phases(i) = std::exp(-kImag * angle * es.eigenvalues()(i));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

PureState coherent_state(SpinQuantum spin, const SphericalAngles& dir) {
  const Eigen::Index d = spin.dim();
  const int tj = spin.twice_j();
  PureState out;
  out.amp.resize(d);
  if (std::abs(dir.theta - std::numbers::pi) < 1e-300) {
    // Exactly antipodal: all weight on m = -j.
    out.amp.setZero();
    out.amp(d - 1) = std::exp(kImag * (static_cast<double>(tj) * dir.phi));
    return out;
  }
  const double lc = std::log(std::cos(0.5 * dir.theta));
  const double s = std::sin(0.5 * dir.theta);
  const double ls = s > 0.0 ? std::log(s) : 0.0;
  for (Eigen::Index n = 0; n < d; ++n) {
    // Amplitude on m = j - n: sqrt(C(2j, n)) cos^(2j-n) sin^n e^{i n phi}.
    const double lbin = 0.5 * (std::lgamma(tj + 1.0) - std::lgamma(n + 1.0) -
                               std::lgamma(tj - n + 1.0));
    const double mag = (n > 0 && s == 0.0)
                           ? 0.0
                           : std::exp(lbin + (tj - n) * lc + n * ls);
    out.amp(n) = mag * std::exp(kImag * (static_cast<double>(n) * dir.phi));
  }
  out.normalize();  // unit up to rounding already; make it exact
  return out;
}

}  // namespace kicktop
