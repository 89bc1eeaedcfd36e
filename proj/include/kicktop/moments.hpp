#pragma once

#include <complex>
#include <cstdint>
#include <string_view>

namespace kicktop {

// Ensemble moments of J_z over random single-top states:
//   *_jz2    mean of <Jz^2>          (j(j+1)/3 for both ensembles)
//   *_jz_sq  mean of <Jz>^2          (j^2/3 coherent, j/6 Haar)
enum class MomentKind { su2_jz2, su2_jz_sq, sud_jz2, sud_jz_sq };

std::string_view moment_kind_name(MomentKind kind);

double analytic_moment(MomentKind kind, double j);

struct MomentResult {
  double analytic = 0.0;
  double mc_mean = 0.0;
  double mc_stderr = 0.0;
  long samples = 0;
};

MomentResult monte_carlo_moment(MomentKind kind, double j, long samples, std::uint64_t seed);

// Fourth moments of the Haar single-coordinate and pair marginals,
//   int x^4 P1(x) dx           = 3 / (8 (j+1)(2j+1))
//   int x^2 y^2 P2(x, y) dx dy = 1 / (8 (j+1)(2j+1))
// with the quadrature values computed by adaptive Gauss-Kronrod (the pair
// integral as iterated 1-D over the unit disk).
struct MarginalMoments {
  double x4_analytic = 0.0;
  double x4_quadrature = 0.0;
  double x2y2_analytic = 0.0;
  double x2y2_quadrature = 0.0;
};

MarginalMoments marginal_integrals(double j);

// Normalization of the single-coordinate marginal (should be 1).
double p1_normalization(double j);

// Monte Carlo check that the mixed moments <Jz Jx> (quantum expectation of
// the symmetrized product) and <Jz><Jx> average to zero over the ensemble.
struct CrossTermReport {
  double mixed_mean = 0.0;
  double mixed_stderr = 0.0;
  double product_mean = 0.0;
  double product_stderr = 0.0;
  long samples = 0;

  bool pass(double nsigma = 4.0) const;
};

CrossTermReport cross_term_check_su2(double j, long samples, std::uint64_t seed);
CrossTermReport cross_term_check_sud(double j, long samples, std::uint64_t seed);

}  // namespace kicktop
