#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kicktop/entanglement.hpp"
#include "kicktop/spin.hpp"
#include "kicktop/states.hpp"

using namespace kicktop;

namespace {

double mean_and_se(const std::vector<double>& xs, double& se) {
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double var = 0.0;
  for (double x : xs) var += (x - mean) * (x - mean);
  se = std::sqrt(var / (static_cast<double>(xs.size()) *
                        (static_cast<double>(xs.size()) - 1.0)));
  return mean;
}

}  // namespace

TEST_CASE("derived streams are deterministic and distinct") {
  EnsembleSpec spec{EnsembleKind::sud_random, 10, 99};
  const ProductState a = sample_product(spec, SpinQuantum(1.0), SpinQuantum(1.5), 4);
  const ProductState b = sample_product(spec, SpinQuantum(1.0), SpinQuantum(1.5), 4);
  const ProductState c = sample_product(spec, SpinQuantum(1.0), SpinQuantum(1.5), 5);
  CHECK((a.first.amp - b.first.amp).norm() == 0.0);  // bitwise reproducible
  CHECK((a.second.amp - b.second.amp).norm() == 0.0);
  CHECK((a.first.amp - c.first.amp).norm() > 1e-3);

  EnsembleSpec su2 = spec;
  su2.kind = EnsembleKind::su2_coherent;
  const ProductState d = sample_product(su2, SpinQuantum(1.0), SpinQuantum(1.5), 4);
  const ProductState e = sample_product(su2, SpinQuantum(1.0), SpinQuantum(1.5), 4);
  CHECK((d.first.amp - e.first.amp).norm() == 0.0);
  CHECK((d.first.amp - a.first.amp).norm() > 1e-6);  // different ensembles differ
}

TEST_CASE("sampled states are normalized products") {
  EnsembleSpec spec{EnsembleKind::su2_coherent, 10, 5};
  for (int kindi = 0; kindi < 2; ++kindi) {
    spec.kind = kindi == 0 ? EnsembleKind::su2_coherent : EnsembleKind::sud_random;
    for (std::uint64_t i = 0; i < 5; ++i) {
      const ProductState p = sample_product(spec, SpinQuantum(2.0), SpinQuantum(2.5), i);
      CHECK(p.first.norm() == doctest::Approx(1.0).epsilon(1e-14));
      CHECK(p.second.norm() == doctest::Approx(1.0).epsilon(1e-14));
      const PureState joint = flatten(p);
      CHECK(joint.norm() == doctest::Approx(1.0).epsilon(1e-14));
      CHECK(linear_entropy_of_state(joint, 5, 6) < 1e-13);
    }
  }
}

TEST_CASE("flatten orders amplitudes row-major") {
  ProductState p;
  p.first.amp.resize(2);
  p.first.amp << 1.0, 2.0;
  p.second.amp.resize(3);
  p.second.amp << 3.0, 4.0, 5.0;
  const PureState joint = flatten(p);
  REQUIRE(joint.dim() == 6);
  CHECK(joint.amp(0) == std::complex<double>(3.0, 0.0));
  CHECK(joint.amp(2) == std::complex<double>(5.0, 0.0));
  CHECK(joint.amp(3) == std::complex<double>(6.0, 0.0));
  CHECK(joint.amp(5) == std::complex<double>(10.0, 0.0));
}

TEST_CASE("Haar samples have the right low-order overlap moments") {
  // E|<e0|psi>|^2 = 1/d and E|<e0|psi>|^4 = 2/(d(d+1)).
  RandomStream rng(31);
  const Eigen::Index d = 7;
  const int n = 20000;
  std::vector<double> p2(n), p4(n);
  for (int i = 0; i < n; ++i) {
    const PureState psi = sample_haar_state(d, rng);
    const double w = std::norm(psi.amp(0));
    p2[i] = w;
    p4[i] = w * w;
  }
  double se2 = 0.0, se4 = 0.0;
  const double m2 = mean_and_se(p2, se2);
  const double m4 = mean_and_se(p4, se4);
  CHECK(std::abs(m2 - 1.0 / 7.0) < 4.0 * se2);
  CHECK(std::abs(m4 - 2.0 / (7.0 * 8.0)) < 4.0 * se4);
}

TEST_CASE("QR and Gaussian Haar constructions agree in distribution") {
  RandomStream rng(37);
  const Eigen::Index d = 5;
  const int n = 6000;
  std::vector<double> g(n), q(n);
  for (int i = 0; i < n; ++i) g[i] = std::norm(sample_haar_state(d, rng).amp(0));
  for (int i = 0; i < n; ++i) q[i] = std::norm(sample_haar_state_qr(d, rng).amp(0));
  double seg = 0.0, seq = 0.0;
  const double mg = mean_and_se(g, seg);
  const double mq = mean_and_se(q, seq);
  CHECK(std::abs(mg - 1.0 / 5.0) < 4.0 * seg);
  CHECK(std::abs(mq - 1.0 / 5.0) < 4.0 * seq);
  CHECK(std::abs(mg - mq) < 4.0 * std::sqrt(seg * seg + seq * seq));
}

TEST_CASE("coherent directions cover the sphere uniformly") {
  RandomStream rng(41);
  const int n = 20000;
  std::vector<double> cz(n), cz2(n);
  for (int i = 0; i < n; ++i) {
    const SphericalAngles dir = random_direction(rng);
    const double c = std::cos(dir.theta);
    cz[i] = c;
    cz2[i] = c * c;
  }
  double se1 = 0.0, se2 = 0.0;
  const double m1 = mean_and_se(cz, se1);
  const double m2 = mean_and_se(cz2, se2);
  CHECK(std::abs(m1) < 4.0 * se1);
  CHECK(std::abs(m2 - 1.0 / 3.0) < 4.0 * se2);
}

TEST_CASE("ensemble resolution of identity") {
  // For both ensembles, E |<chi|psi>|^2 = 1/d for any fixed chi.
  const SpinQuantum spin(3.0);
  const Eigen::Index d = spin.dim();
  RandomStream fixed_rng(5);
  const PureState chi = sample_haar_state(d, fixed_rng);

  for (int kindi = 0; kindi < 2; ++kindi) {
    RandomStream rng(43 + kindi);
    const int n = 20000;
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i) {
      const PureState psi = kindi == 0 ? coherent_state(spin, random_direction(rng))
                                       : sample_haar_state(d, rng);
      w[static_cast<std::size_t>(i)] = std::norm(chi.amp.dot(psi.amp));
    }
    double se = 0.0;
    const double m = mean_and_se(w, se);
    CHECK(std::abs(m - 1.0 / static_cast<double>(d)) < 4.0 * se);
  }
}
