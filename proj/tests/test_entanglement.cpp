#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "kicktop/entanglement.hpp"
#include "kicktop/rng.hpp"
#include "kicktop/states.hpp"

using namespace kicktop;

namespace {

// Independent reduction of subsystem 2 for cross-checks.
Eigen::MatrixXcd trace_out_first(const PureState& psi, Eigen::Index d1, Eigen::Index d2) {
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(d2, d2);
  for (Eigen::Index b = 0; b < d2; ++b)
    for (Eigen::Index bp = 0; bp < d2; ++bp)
      for (Eigen::Index a = 0; a < d1; ++a)
        rho(b, bp) += psi.amp(a * d2 + b) * std::conj(psi.amp(a * d2 + bp));
  return rho;
}

PureState random_product(Eigen::Index d1, Eigen::Index d2, RandomStream& rng) {
  ProductState p{sample_haar_state(d1, rng), sample_haar_state(d2, rng)};
  return flatten(p);
}

}  // namespace

TEST_CASE("product states have pure reductions") {
  RandomStream rng(3);
  const PureState psi = random_product(3, 4, rng);
  const ReducedDensity rd = partial_trace_second(psi, 3, 4);
  CHECK(std::abs(rd.rho.trace().real() - 1.0) < 1e-13);
  CHECK((rd.rho - rd.rho.adjoint()).norm() < 1e-14);
  CHECK(linear_entropy(rd) < 1e-13);
  CHECK(linear_entropy_of_state(psi, 3, 4) < 1e-13);
  CHECK(von_neumann_entropy(rd) < 1e-10);
}

TEST_CASE("Bell state is maximally entangled") {
  PureState bell;
  bell.amp = Eigen::VectorXcd::Zero(4);
  bell.amp(0) = 1.0 / std::sqrt(2.0);
  bell.amp(3) = 1.0 / std::sqrt(2.0);
  const ReducedDensity rd = partial_trace_second(bell, 2, 2);
  CHECK((rd.rho - 0.5 * Eigen::MatrixXcd::Identity(2, 2)).norm() < 1e-14);
  CHECK(linear_entropy(rd) == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(von_neumann_entropy(rd) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(linear_entropy(rd) == doctest::Approx(max_linear_entropy(2)).epsilon(1e-13));
}

TEST_CASE("rank-2 state entropies match hand-computed spectra") {
  // |psi> = sqrt(3)/2 |00> + 1/2 |11>; spectrum {3/4, 1/4}.
  PureState psi;
  psi.amp = Eigen::VectorXcd::Zero(4);
  psi.amp(0) = std::sqrt(3.0) / 2.0;
  psi.amp(3) = 0.5;
  const ReducedDensity rd = partial_trace_second(psi, 2, 2);
  const double p1 = 0.75, p2 = 0.25;
  CHECK(linear_entropy(rd) == doctest::Approx(1.0 - p1 * p1 - p2 * p2).epsilon(1e-13));
  const double vn = -p1 * std::log2(p1) - p2 * std::log2(p2);
  CHECK(von_neumann_entropy(rd) == doctest::Approx(vn).epsilon(1e-12));
  CHECK(vn == doctest::Approx(2.0 - 0.75 * std::log2(3.0)).epsilon(1e-14));
}

TEST_CASE("both reductions share the same purity") {
  RandomStream rng(11);
  for (auto [d1, d2] : {std::pair<Eigen::Index, Eigen::Index>{3, 5}, {5, 3}, {4, 4}}) {
    const PureState psi = sample_haar_state(d1 * d2, rng);
    const ReducedDensity rd = partial_trace_second(psi, d1, d2);
    const Eigen::MatrixXcd rho2 = trace_out_first(psi, d1, d2);
    CHECK(std::abs(rd.rho.trace().real() - 1.0) < 1e-13);
    CHECK(std::abs(rho2.trace().real() - 1.0) < 1e-13);
    CHECK(std::abs(rd.rho.squaredNorm() - rho2.squaredNorm()) < 1e-13);
    CHECK(std::abs(subsystem_purity(psi, d1, d2) - rd.rho.squaredNorm()) < 1e-13);
    // Nonzero spectra match, so the entropies do too.
    CHECK(std::abs(von_neumann_entropy(rd) -
                   von_neumann_entropy({rho2, d2, d1})) < 1e-10);
  }
}

TEST_CASE("maximally entangled state saturates the entropy cap") {
  const Eigen::Index d = 40;
  PureState psi;
  psi.amp = Eigen::VectorXcd::Zero(d * d);
  for (Eigen::Index i = 0; i < d; ++i) psi.amp(i * d + i) = 1.0 / std::sqrt(double(d));
  CHECK(linear_entropy_of_state(psi, d, d) ==
        doctest::Approx(max_linear_entropy(d)).epsilon(1e-13));
  CHECK(max_linear_entropy(d) == doctest::Approx(0.975).epsilon(1e-15));
}

TEST_CASE("statistical limit values and behavior") {
  CHECK(statistical_limit(40, 41) == doctest::Approx(1.0 - 81.0 / 1641.0).epsilon(1e-15));
  CHECK(statistical_limit(2, 2) == doctest::Approx(1.0 - 4.0 / 5.0).epsilon(1e-15));
  CHECK(statistical_limit(3, 4) == doctest::Approx(1.0 - 7.0 / 13.0).epsilon(1e-15));
  // Large equal dimensions approach 1 - 2/d.
  CHECK(statistical_limit(1000, 1000) ==
        doctest::Approx(1.0 - 2.0 / 1000.0).epsilon(1e-5));
  // Below the hard cap 1 - 1/d1 for the smaller side.
  CHECK(statistical_limit(40, 41) < max_linear_entropy(40));
  CHECK(statistical_limit(4, 5) > statistical_limit(3, 5));
}

TEST_CASE("entropies are invariant under local unitaries") {
  RandomStream rng(17);
  const Eigen::Index d1 = 3, d2 = 4;
  const PureState psi = sample_haar_state(d1 * d2, rng);

  // Random local unitaries from QR-decomposed Ginibre matrices.
  const auto random_unitary = [&](Eigen::Index d) {
    Eigen::MatrixXcd g(d, d);
    for (Eigen::Index c = 0; c < d; ++c)
      for (Eigen::Index r = 0; r < d; ++r) g(r, c) = rng.complex_normal();
    return Eigen::MatrixXcd(Eigen::HouseholderQR<Eigen::MatrixXcd>(g).householderQ());
  };
  const Eigen::MatrixXcd u1 = random_unitary(d1);
  const Eigen::MatrixXcd u2 = random_unitary(d2);

  PureState rotated;
  rotated.amp.resize(d1 * d2);
  using RowMat = Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic,
                               Eigen::RowMajor>;
  Eigen::Map<const RowMat> c(psi.amp.data(), d1, d2);
  Eigen::Map<RowMat> out(rotated.amp.data(), d1, d2);
  out = u1 * c * u2.transpose();

  CHECK(std::abs(linear_entropy_of_state(rotated, d1, d2) -
                 linear_entropy_of_state(psi, d1, d2)) < 1e-12);
  CHECK(std::abs(von_neumann_entropy(partial_trace_second(rotated, d1, d2)) -
                 von_neumann_entropy(partial_trace_second(psi, d1, d2))) < 1e-10);
}

TEST_CASE("Haar ensemble mean matches the statistical limit") {
  RandomStream rng(23);
  const Eigen::Index d1 = 3, d2 = 4;
  const int n = 4000;
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double s = linear_entropy_of_state(sample_haar_state(d1 * d2, rng), d1, d2);
    sum += s;
    sumsq += s * s;
  }
  const double mean = sum / n;
  const double se = std::sqrt((sumsq / n - mean * mean) / (n - 1.0));
  CHECK(std::abs(mean - statistical_limit(d1, d2)) < 4.0 * se);
}

TEST_CASE("dimension mismatches are rejected") {
  PureState psi;
  psi.amp = Eigen::VectorXcd::Zero(6);
  psi.amp(0) = 1.0;
  CHECK_THROWS_AS(partial_trace_second(psi, 2, 4), std::invalid_argument);
  CHECK_THROWS_AS(subsystem_purity(psi, 4, 2), std::invalid_argument);
  CHECK_THROWS_AS(statistical_limit(0, 4), std::invalid_argument);
}
