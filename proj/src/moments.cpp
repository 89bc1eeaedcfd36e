#include "kicktop/moments.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "kicktop/rng.hpp"
#include "kicktop/spin.hpp"
#include "kicktop/states.hpp"

namespace kicktop {

namespace {

double accumulate_stats(const std::vector<double>& xs, double& stderr_out) {
  const double n = static_cast<double>(xs.size());
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= n;
  double var = 0.0;
  for (double x : xs) var += (x - mean) * (x - mean);
  stderr_out = xs.size() > 1 ? std::sqrt(var / (n * (n - 1.0))) : 0.0;
  return mean;
}

// <Jz> and <Jz^2> are diagonal sums in the m basis.
void jz_moments(const PureState& psi, double j, double& mean, double& mean_sq) {
  mean = 0.0;
  mean_sq = 0.0;
  for (Eigen::Index n = 0; n < psi.dim(); ++n) {
    const double m = j - static_cast<double>(n);
    const double w = std::norm(psi.amp(n));
    mean += m * w;
    mean_sq += m * m * w;
  }
}

PureState sample_single(MomentKind kind, SpinQuantum spin, RandomStream& rng) {
  const bool coherent =
      kind == MomentKind::su2_jz2 || kind == MomentKind::su2_jz_sq;
  if (coherent) return coherent_state(spin, random_direction(rng));
  return sample_haar_state(spin.dim(), rng);
}

}  // namespace

std::string_view moment_kind_name(MomentKind kind) {
  switch (kind) {
    case MomentKind::su2_jz2: return "SU2_Jz2";
    case MomentKind::su2_jz_sq: return "SU2_Jz_sq";
    case MomentKind::sud_jz2: return "SUd_Jz2";
    case MomentKind::sud_jz_sq: return "SUd_Jz_sq";
  }
  throw std::invalid_argument("unknown moment kind");
}

double analytic_moment(MomentKind kind, double j) {
  switch (kind) {
    case MomentKind::su2_jz2:
    case MomentKind::sud_jz2:
      return j * (j + 1.0) / 3.0;
    case MomentKind::su2_jz_sq:
      return j * j / 3.0;
    case MomentKind::sud_jz_sq:
      return j / 6.0;
  }
  throw std::invalid_argument("unknown moment kind");
}

MomentResult monte_carlo_moment(MomentKind kind, double j, long samples, std::uint64_t seed) {
  if (samples < 2) throw std::invalid_argument("need at least two samples");
  const SpinQuantum spin(j);
  RandomStream rng(seed);
  std::vector<double> xs(static_cast<std::size_t>(samples));
  const bool square_mean =
      kind == MomentKind::su2_jz_sq || kind == MomentKind::sud_jz_sq;
  for (long i = 0; i < samples; ++i) {
    const PureState psi = sample_single(kind, spin, rng);
    double mean = 0.0, mean_sq = 0.0;
    jz_moments(psi, j, mean, mean_sq);
    xs[static_cast<std::size_t>(i)] = square_mean ? mean * mean : mean_sq;
  }
  MomentResult res;
  res.analytic = analytic_moment(kind, j);
  res.samples = samples;
  res.mc_mean = accumulate_stats(xs, res.mc_stderr);
  return res;
}

namespace {

using boost::math::quadrature::gauss_kronrod;

// P1(x) = Gamma(2j+1) / (sqrt(pi) Gamma(2j+1/2)) (1 - x^2)^(2j - 1/2)
double p1_density(double j, double x) {
  const double lognorm = std::lgamma(2.0 * j + 1.0) - std::lgamma(2.0 * j + 0.5) -
                         0.5 * std::log(std::numbers::pi);
  const double t = 1.0 - x * x;
  if (t <= 0.0) return 0.0;
  return std::exp(lognorm + (2.0 * j - 0.5) * std::log(t));
}

// P2(x, y) = 2j / pi * (1 - x^2 - y^2)^(2j - 1) on the unit disk; integrating
// out y recovers P1.
double p2_density(double j, double x, double y) {
  const double t = 1.0 - x * x - y * y;
  if (t <= 0.0) return 0.0;
  const double lognorm = std::log(2.0 * j) - std::log(std::numbers::pi);
  return std::exp(lognorm + (2.0 * j - 1.0) * std::log(t));
}

}  // namespace

double p1_normalization(double j) {
  auto f = [j](double x) { return p1_density(j, x); };
  return gauss_kronrod<double, 61>::integrate(f, -1.0, 1.0, 12, 1e-12);
}

MarginalMoments marginal_integrals(double j) {
  if (!(j >= 0.5)) throw std::invalid_argument("marginal integrals require j >= 1/2");
  MarginalMoments mm;
  const double denom = 8.0 * (j + 1.0) * (2.0 * j + 1.0);
  mm.x4_analytic = 3.0 / denom;
  mm.x2y2_analytic = 1.0 / denom;

  auto f1 = [j](double x) { return x * x * x * x * p1_density(j, x); };
  mm.x4_quadrature = gauss_kronrod<double, 61>::integrate(f1, -1.0, 1.0, 12, 1e-12);

  auto outer = [j](double x) {
    const double r2 = 1.0 - x * x;
    if (r2 <= 0.0) return 0.0;
    const double r = std::sqrt(r2);
    auto inner = [j, x](double y) { return y * y * p2_density(j, x, y); };
    return x * x * gauss_kronrod<double, 61>::integrate(inner, -r, r, 12, 1e-12);
  };
  mm.x2y2_quadrature = gauss_kronrod<double, 61>::integrate(outer, -1.0, 1.0, 12, 1e-12);
  return mm;
}

namespace {

CrossTermReport cross_term_check(bool coherent, double j, long samples, std::uint64_t seed) {
  if (samples < 2) throw std::invalid_argument("need at least two samples");
  const SpinQuantum spin(j);
  const SpinOperators ops = build_spin_operators(spin);
  const Eigen::MatrixXcd sym = 0.5 * (ops.jz * ops.jx + ops.jx * ops.jz);
  RandomStream rng(seed);
  std::vector<double> mixed(static_cast<std::size_t>(samples));
  std::vector<double> prod(static_cast<std::size_t>(samples));
  for (long i = 0; i < samples; ++i) {
    const PureState psi = coherent ? coherent_state(spin, random_direction(rng))
                                   : sample_haar_state(spin.dim(), rng);
    const double zx = psi.amp.dot(sym * psi.amp).real();
    const double z = psi.amp.dot(ops.jz * psi.amp).real();
    const double x = psi.amp.dot(ops.jx * psi.amp).real();
    mixed[static_cast<std::size_t>(i)] = zx;
    prod[static_cast<std::size_t>(i)] = z * x;
  }
  CrossTermReport rep;
  rep.samples = samples;
  rep.mixed_mean = accumulate_stats(mixed, rep.mixed_stderr);
  rep.product_mean = accumulate_stats(prod, rep.product_stderr);
  return rep;
}

}  // namespace

bool CrossTermReport::pass(double nsigma) const {
  return std::abs(mixed_mean) <= nsigma * mixed_stderr &&
         std::abs(product_mean) <= nsigma * product_stderr;
}

CrossTermReport cross_term_check_su2(double j, long samples, std::uint64_t seed) {
  return cross_term_check(true, j, samples, seed);
}

CrossTermReport cross_term_check_sud(double j, long samples, std::uint64_t seed) {
  return cross_term_check(false, j, samples, seed);
}

}  // namespace kicktop
