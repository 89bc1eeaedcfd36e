#pragma once

#include <Eigen/Dense>

namespace kicktop {

// Normalized pure state over one Hilbert space (or a flattened product space,
// row-major: amp[a * d2 + b] multiplies |a> x |b>).
struct PureState {
  Eigen::VectorXcd amp;

  Eigen::Index dim() const { return amp.size(); }
  double norm() const { return amp.norm(); }
  void normalize() { amp /= amp.norm(); }
};

struct ProductState {
  PureState first;
  PureState second;
};

// Flatten |a> x |b> into the joint space.
inline PureState flatten(const ProductState& p) {
  const Eigen::Index d1 = p.first.dim();
  const Eigen::Index d2 = p.second.dim();
  PureState out;
  out.amp.resize(d1 * d2);
  for (Eigen::Index a = 0; a < d1; ++a)
    out.amp.segment(a * d2, d2) = p.first.amp(a) * p.second.amp;
  return out;
}

}  // namespace kicktop
