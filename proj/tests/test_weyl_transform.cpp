#include <cmath>
#include <random>

#include "ccrheat/errors.hpp"
#include "ccrheat/weyl_transform.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace ccrheat;

namespace {

FockOperator random_operator(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix m(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) m(r, c) = cplx{g(rng), g(rng)};
  return FockOperator(m);
}

}  // namespace

TEST_CASE("trustworthy window") {
  CHECK(trustworthy_radius(8) == doctest::Approx(4.0));
  CHECK(trustworthy_radius(40) == doctest::Approx(std::sqrt(80.0)));
}

TEST_CASE("char_function: identity and vacuum") {
  const GridSpec g = GridSpec::covering(2.0, 0.25);
  CHECK(std::abs(char_value(FockOperator::identity(12), {0, 0}) - 12.0) <= 1e-12);

  const FockOperator vac = number_state(0, 40).op();
  const CharFunction f = char_function(vac, g, 2.0);
  CHECK(f.source_dim() == 40);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const PhasePoint z = g.point(k);
    if (z.norm() <= 2.0) {
      CHECK(std::abs(f.values()[k] - std::exp(-z.norm2() / 4.0)) <= 1e-6);
    } else {
      CHECK(f.values()[k] == cplx{});
      CHECK_FALSE(f.in_support(z));
    }
  }
}

TEST_CASE("char_function: transform of trace, bound by trace norm, linearity") {
  std::mt19937_64 rng(4);
  const GridSpec g = GridSpec::covering(3.0, 0.3);
  for (int trial = 0; trial < 5; ++trial) {
    const FockOperator a = random_operator(16, rng);
    const FockOperator b = random_operator(16, rng);
    CHECK(std::abs(char_value(a, {0, 0}) - a.trace()) <= 1e-12);

    const CharFunction fa = char_function(a, g);
    const CharFunction fb = char_function(b, g);
    const double tn = trace_norm(a);
    for (cplx v : fa.values()) CHECK(std::abs(v) <= tn * (1 + 1e-12));

    const cplx s{0.7, -1.2}, u{-0.3, 0.4};
    const CharFunction fc = char_function(s * a + u * b, g);
    for (std::size_t k = 0; k < g.size(); ++k) {
      CHECK(std::abs(fc.values()[k] - (s * fa.values()[k] + u * fb.values()[k])) <= 1e-10);
    }
  }
}

TEST_CASE("char_function: covariance under Weyl conjugation") {
  std::mt19937_64 rng(19);
  const DensityOperator rho = random_density(60, 5, rng);
  for (PhasePoint zeta : {PhasePoint{0.6, -0.3}, PhasePoint{-1.0, 0.5}}) {
    const Matrix w = weyl_block(zeta, 60).matrix();
    const FockOperator conj(w * rho.op().matrix() * w.adjoint());
    for (PhasePoint z : {PhasePoint{0.5, 0.5}, PhasePoint{-1.4, 0.2}, PhasePoint{0.0, 2.0}}) {
      // trace(W A W^dag W_z) = trace(A W^dag W_z W), and W^dag W_z W carries exp(2i omega(z, zeta))
      const cplx expect = std::polar(1.0, 2.0 * omega(z, zeta)) * char_value(rho.op(), z);
      CHECK(std::abs(char_value(conj, z) - expect) <= 1e-6);
      const cplx flipped = std::polar(1.0, 2.0 * omega(zeta, z)) * char_value(rho.op(), z);
      if (std::abs(omega(zeta, z)) > 0.1) CHECK(std::abs(char_value(conj, z) - flipped) > 1e-3);
    }
  }
}

TEST_CASE("char_function: window violations rejected") {
  const FockOperator a = FockOperator::identity(8);  // window sqrt(16) = 4
  CHECK_THROWS_AS(char_function(a, GridSpec::covering(5.0, 0.5), 5.0), TruncationError);
  CHECK_THROWS_AS(char_function(a, GridSpec::covering(5.0, 0.5)), TruncationError);
  CHECK_THROWS_AS(char_value(a, {4.0, 1.0}), TruncationError);
  CHECK_NOTHROW(char_function(a, GridSpec::covering(5.0, 0.5), 4.0));
}

TEST_CASE("CharFunction validation") {
  const GridSpec g(1.0, 4);
  CHECK_THROWS_AS(CharFunction(g, std::vector<cplx>(3), 4, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(CharFunction(g, std::vector<cplx>(16), 0, 1.0), std::invalid_argument);
  std::vector<cplx> bad(16);
  bad[3] = cplx{INFINITY, 0.0};
  CHECK_THROWS_AS(CharFunction(g, bad, 4, 1.0), std::invalid_argument);
}

TEST_CASE("inverse constant calibrates to 1/(2 pi)") {
  const double c = calibrate_inverse_constant(GridSpec::covering(6.0, 0.2), 6.0, 30);
  CHECK(std::abs(c / kPlancherelConstant - 1.0) <= 1e-3);
}

TEST_CASE("round trip of |0><0| at N = 30, |z| <= 6, h = 0.2") {
  const GridSpec g = GridSpec::covering(6.0, 0.2);
  const FockOperator vac = number_state(0, 30).op();
  const FockOperator back = inverse_transform(char_function(vac, g, 6.0), 30);
  CHECK(trace_norm(back - vac) <= 1e-3);
}

TEST_CASE("round trip of a random low-lying state on the leading block") {
  std::mt19937_64 rng(23);
  const DensityOperator rho = random_density(40, 3, rng);
  const GridSpec g = GridSpec::covering(8.0, 0.2);
  const FockOperator back = inverse_transform(char_function(rho.op(), g, 8.0), 40);
  CHECK(trace_norm((back - rho.op()).leading_block(8)) <= 1e-3);
}

TEST_CASE("inverse_transform: zero function, coarse grids, bad dimensions") {
  const GridSpec g = GridSpec::covering(6.0, 0.2);
  const CharFunction zero(g, std::vector<cplx>(g.size()), 30, 6.0);
  CHECK(hs_norm(inverse_transform(zero, 30)) == 0.0);

  const GridSpec coarse = GridSpec::covering(6.0, 1.5);
  const CharFunction fc = char_function(number_state(0, 30).op(), coarse, 6.0);
  CHECK_THROWS_AS(inverse_transform(fc, 30), GridError);
  InverseOptions off;
  off.probe_check = false;
  CHECK_NOTHROW(inverse_transform(fc, 30, off));

  CHECK_THROWS_AS(inverse_transform(zero, 31), std::invalid_argument);
  CHECK_THROWS_AS(inverse_transform(zero, 0), std::invalid_argument);
}

TEST_CASE("Riemann-Lebesgue profile: vacuum") {
  const FockOperator vac = number_state(0, 40).op();
  std::vector<double> radii;
  for (double r = 0.0; r <= 6.0; r += 0.5) radii.push_back(r);
  radii.push_back(4.3);
  const auto prof = riemann_lebesgue_profile(vac, radii);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    CHECK(std::abs(prof[i] - std::exp(-radii[i] * radii[i] / 4.0)) <= 1e-4);
    if (radii[i] >= 4.3) CHECK(prof[i] <= 0.01);
  }
}

TEST_CASE("Riemann-Lebesgue profile: zero operator and a traceless pair") {
  const auto z = riemann_lebesgue_profile(FockOperator::zero(10), {0.0, 1.0, 2.0});
  for (double v : z) CHECK(v == 0.0);

  // <1|W_z|1> = exp(-r^2/4)(1 - r^2/2), so the difference is exp(-r^2/4) r^2/2
  const FockOperator a = number_state(0, 40).op() - number_state(1, 40).op();
  const std::vector<double> radii{0.0, 0.5, 1.0, 2.0, 3.0, 4.0, 6.0, 8.0};
  const auto prof = riemann_lebesgue_profile(a, radii);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double r = radii[i];
    CHECK(std::abs(prof[i] - std::exp(-r * r / 4.0) * r * r / 2.0) <= 1e-8);
  }
  CHECK(prof.back() < 1e-5);
  CHECK_THROWS_AS(riemann_lebesgue_profile(a, {10.0}), TruncationError);
}
