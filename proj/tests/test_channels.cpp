#include <cmath>
#include <numbers>
#include <random>

#include "ccrheat/channels.hpp"
#include "ccrheat/errors.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace ccrheat;

namespace {

double leading_relative_error(const FockOperator& got, const Matrix& expect, int block) {
  return (got.matrix().topLeftCorner(block, block) - expect.topLeftCorner(block, block)).norm() /
         expect.topLeftCorner(block, block).norm();
}

GridSpec approximant_grid_for_test(double t) {
  // half-width 64 pi, spacing <= min(sqrt(8t), 0.63)
  const double half = 64.0 * std::numbers::pi;
  return GridSpec(half, 2 * static_cast<int>(std::ceil(half / std::min(std::sqrt(8.0 * t), 0.63))));
}

double min_eigenvalue(const Matrix& h) {
  return Eigen::SelfAdjointEigenSolver<Matrix>(0.5 * (h + h.adjoint())).eigenvalues().minCoeff();
}

}  // namespace

TEST_CASE("conjugation scale calibrates to magnitude 1/2") {
  CHECK(std::abs(std::abs(conjugation_scale()) - 0.5) <= 1e-12);
  CHECK(calibrate_conjugation_scale() == conjugation_scale());
}

TEST_CASE("semigroup multipliers and parameter validation") {
  CHECK(semigroup_multiplier(SemigroupKind::heat, 0.5, {1.0, 1.0}) == doctest::Approx(std::exp(-1.0)));
  CHECK(semigroup_multiplier(SemigroupKind::cauchy, 0.5, {1.0, -3.0}) == doctest::Approx(std::exp(-2.0)));
  CHECK_THROWS_AS(HeatFlowParams::checked(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(HeatFlowParams::checked(NAN), std::invalid_argument);
  CHECK(HeatFlowParams::checked(0.0).t == 0.0);
}

TEST_CASE("MeasureChannel: window check") {
  const GridSpec g(8.0, 16);
  const GridMeasure far = point_mass(g, {6.0, 0.0});  // |c z|^2 / 2 = 4.5
  CHECK(MeasureChannel::required_truncation(far) == 5);
  CHECK_THROWS_AS(MeasureChannel(far, 4), TruncationError);
  CHECK_NOTHROW(MeasureChannel(far, 5));
  CHECK_THROWS_AS(MeasureChannel(far, 8, 0.0), std::invalid_argument);
}

TEST_CASE("apply_quadrature: delta_0 is the identity map") {
  std::mt19937_64 rng(1);
  const MeasureChannel id(point_mass(GridSpec(1.0, 4), {0, 0}), 16);
  const FockOperator a = random_density(16, 16, rng).op();
  CHECK(hs_norm(apply_quadrature(id, a) - a) <= 1e-14);
}

TEST_CASE("eigen-relation: gaussian(0.25) sends W_z to exp(-t|z|^2) W_z") {
  const double t = 0.25;
  const int n = 40;
  const MeasureChannel ch = heat_channel(t, n);
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 6; ++i) {
    PhasePoint z{u(rng), u(rng)};
    if (z.norm() > 1.0) z = (1.0 / z.norm()) * z;
    const FockOperator w = weyl_operator(z, n);
    const Matrix expect = std::exp(-t * z.norm2()) * w.matrix();
    CHECK(leading_relative_error(apply_quadrature(ch, w), expect, n / 4) <= 1e-3);
    CHECK(leading_relative_error(apply_spectral({t}, w), expect, n / 4) <= 1e-3);
  }
}

TEST_CASE("unitality and trace preservation for probability measures") {
  // identity(N) stands for the projection onto N levels; at N = 64 the leak
  // into the leading block is far below the tolerance
  const FockOperator one = FockOperator::identity(64);
  const FockOperator img = apply_quadrature(heat_channel(0.5, 64), one);
  CHECK((img.matrix() - one.matrix()).topLeftCorner(10, 10).cwiseAbs().maxCoeff() <= 1e-8);

  std::mt19937_64 rng(2);
  for (double t : {0.25, 1.0}) {
    const DensityOperator rho = random_density(50, 4, rng);
    const FockOperator q = apply_quadrature(heat_channel(t, 50), rho.op());
    CHECK(std::abs(q.trace() - 1.0) <= 1e-6);
    const FockOperator s = apply_spectral({t}, rho.op());
    CHECK(std::abs(s.trace() - 1.0) <= 1e-6);
  }

  // total mass scales the trace
  const GridSpec g(2.0, 8);
  GridMeasure two = point_mass(g, {0.5, 0.5}) + point_mass(g, {-1.0, 0.0});
  two *= cplx{0.75};
  const FockOperator a = number_state(0, 30).op();
  CHECK(std::abs(apply_quadrature(MeasureChannel(two, 30), a).trace() - 1.5) <= 1e-6);
}

TEST_CASE("Choi matrices") {
  SUBCASE("identity channel, n = 2: eigenvalues {2, 0, 0, 0}") {
    const MeasureChannel id(point_mass(GridSpec(1.0, 4), {0, 0}), 8);
    const Matrix c = choi_matrix(id, 2);
    Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Matrix>(c).eigenvalues();
    CHECK(std::abs(ev(3) - 2.0) <= 1e-12);
    for (int k = 0; k < 3; ++k) CHECK(std::abs(ev(k)) <= 1e-12);
  }
  SUBCASE("gaussian(0.5), n = 4: positive semidefinite") {
    const MeasureChannel ch = heat_channel(0.5, 16);
    CHECK(min_eigenvalue(choi_matrix(ch, 4)) >= -1e-8);
  }
  SUBCASE("signed measure witness") {
    const GridSpec g(2.0, 4);
    const GridMeasure signed_mu = point_mass(g, {1.0, 0.0}) - point_mass(g, {-1.0, 0.0});
    const MeasureChannel ch(signed_mu, 16);
    CHECK(min_eigenvalue(choi_matrix(ch, 4)) <= -0.01);
  }
  CHECK_THROWS_AS(choi_matrix(MeasureChannel(point_mass(GridSpec(1.0, 4), {0, 0}), 16), 5), std::invalid_argument);
}

TEST_CASE("path agreement: quadrature vs spectral, N = 30") {
  std::mt19937_64 rng(7);
  for (double t : {0.25, 1.0}) {
    std::vector<FockOperator> ops;
    for (int i = 0; i < 3; ++i) ops.push_back(random_density(30, 30, rng).op());
    const auto q = apply_quadrature(heat_channel(t, 30), ops);
    for (int i = 0; i < 3; ++i) CHECK(trace_norm(q[i] - apply_spectral({t}, ops[i])) <= 2e-3);
  }
}

TEST_CASE("apply_spectral: t = 0, vacuum, composition, output dimension") {
  std::mt19937_64 rng(13);
  const DensityOperator rho = random_density(30, 5, rng);
  CHECK(trace_norm(apply_spectral({0.0}, rho.op()) - rho.op()) <= 1e-3);

  // vacuum characteristic function exp(-|z|^2/4) times the multiplier
  const double t = 0.5;
  const FockOperator vac_t = apply_spectral({t}, number_state(0, 20).op(), SemigroupKind::heat, 80);
  CHECK(vac_t.dim() == 80);
  for (PhasePoint z : {PhasePoint{0.5, 0.0}, PhasePoint{1.0, -1.0}, PhasePoint{0.0, 2.0}}) {
    CHECK(std::abs(char_value(vac_t, z) - std::exp(-(0.25 + t) * z.norm2())) <= 1e-3);
  }

  // composition phi_s phi_t = phi_{s+t}
  const FockOperator mid = apply_spectral({0.25}, rho.op(), SemigroupKind::heat, 80);
  const FockOperator two_step = apply_spectral({0.5}, mid, SemigroupKind::heat, 30);
  const FockOperator one_step = apply_spectral({0.75}, rho.op());
  CHECK(trace_norm(two_step - one_step) <= 2e-3);
}

TEST_CASE("cauchy semigroup: spectral path multiplies the char function") {
  const double t = 0.3;
  const FockOperator out = apply_spectral({t}, number_state(0, 20).op(), SemigroupKind::cauchy, 60);
  // heavy tails: the 60-level compression misses ~2% of the mass, and the
  // gentle-measurement bound 2 sqrt(missing) caps the char function error
  const double missing = 1.0 - out.trace().real();
  CHECK(missing > 0.0);
  CHECK(missing < 0.05);
  for (PhasePoint z : {PhasePoint{0.5, 0.5}, PhasePoint{-1.0, 0.2}}) {
    const double expect = std::exp(-z.norm2() / 4.0) * semigroup_multiplier(SemigroupKind::cauchy, t, z);
    const double err = std::abs(char_value(out, z) - expect);
    CHECK(err <= 2.0 * std::sqrt(missing));
    CHECK(err <= 1e-2);
  }
}

TEST_CASE("semigroup law via measures drives the same channel") {
  const double h = 0.7;
  const GridSpec g = GridSpec::covering(gaussian_capture_radius(0.5) + h, h);
  const GridMeasure g1 = gaussian_measure(0.5, g);
  const GridMeasure conv = convolve(g1, g1);
  const GridMeasure g2 = gaussian_measure(1.0, conv.grid());
  CHECK(total_variation_distance(conv, g2) <= 1e-3);
  std::mt19937_64 rng(3);
  const FockOperator a = random_density(20, 4, rng).op();
  const int need = std::max(20, MeasureChannel::required_truncation(conv));
  const FockOperator x = apply_quadrature(MeasureChannel(conv, need), a);
  const FockOperator y = apply_quadrature(MeasureChannel(g2, need), a);
  CHECK(trace_norm(x - y) <= total_variation_distance(conv, g2) * trace_norm(a) + 1e-12);
}

TEST_CASE("generator check") {
  const std::vector<double> ts{0.004, 0.002, 0.001};
  const ExperimentReport zero = generator_check({0, 0}, 20, ts);
  CHECK(std::abs(zero.measured["coefficient"].get<double>()) <= 1e-12);
  CHECK(zero.measured["residual"].get<double>() <= 1e-12);

  const ExperimentReport r = generator_check({1, 0}, 40, ts);
  CHECK(r.pass);
  CHECK(std::abs(r.measured["coefficient"].get<double>() + 1.0) <= 1e-2);
  for (PhasePoint z : {PhasePoint{0, 2}, PhasePoint{1, 1}}) {
    const ExperimentReport rz = generator_check(z, 40, ts);
    const double c = rz.measured["coefficient"].get<double>();
    CHECK(std::abs(c / -z.norm2() - 1.0) <= 2e-2);
  }
  CHECK_THROWS_AS(generator_check({1, 0}, 20, {0.001, 0.002}), std::invalid_argument);
  CHECK_THROWS_AS(generator_check({1, 0}, 20, {}), std::invalid_argument);
}

TEST_CASE("cb distance bound: equal measures and the two-atom oracle") {
  const GridSpec g(2.0 * std::sqrt(std::numbers::pi), 8);  // lattice contains 0 and +-sqrt(pi)
  const double r = std::sqrt(std::numbers::pi);
  const GridMeasure mu = point_mass(g, {r, 0.0});
  const GridMeasure nu = point_mass(g, {-r, 0.0});
  const FockOperator w = weyl_operator({0.0, r}, 40);

  const ExperimentReport same = cb_distance_bound(mu, mu, {w});
  CHECK(same.measured["max_ratio"].get<double>() == 0.0);
  CHECK(same.pass);

  // phi_mu(W_a) = FT(mu)(a) W_a, so the gap is |e^{i w(a, z0)} - e^{-i w(a, z0)}| ||W_a|| and
  // omega(a, z0) = pi/2 makes the ratio 1
  const double phase = omega({0.0, r}, {r, 0.0});
  CHECK(phase == doctest::Approx(std::numbers::pi / 2));
  const double oracle_ratio = std::abs(std::sin(phase));
  const ExperimentReport rep = cb_distance_bound(mu, nu, {w});
  CHECK(rep.pass);
  const double gap = rep.measured["gaps"][0].get<double>();
  CHECK(rep.measured["max_ratio"].get<double>() == doctest::Approx(oracle_ratio).epsilon(1e-6));
  CHECK(gap == doctest::Approx(2.0 * oracle_ratio * operator_norm(w)).epsilon(1e-6));
}

TEST_CASE("cb distance bound: Gaussian vs band-limited approximant, t = 4, delta = 1") {
  const double t = 4.0;
  const GridSpec g = approximant_grid_for_test(t);
  const GridMeasure mu = gaussian_measure(t, g);
  GridMeasure nu = band_limited_approximant(t, 1.0, g);
  std::mt19937_64 rng(10);
  std::vector<FockOperator> probes{weyl_operator({0.3, 0.2}, 12), random_density(12, 6, rng).op(),
                                   FockOperator::identity(12)};
  const ExperimentReport rep = cb_distance_bound(mu, nu, probes);
  CHECK(rep.pass);
  CHECK(rep.measured["max_ratio"].get<double>() <= 1.0 + 1e-6);
}

TEST_CASE("apply_monte_carlo approaches the deterministic quadrature") {
  const MeasureChannel ch = heat_channel(0.25, 12);
  const FockOperator a = number_state(1, 12).op();
  const FockOperator exact = apply_quadrature(ch, a);
  const FockOperator mc1 = apply_monte_carlo(ch, a, 20000, 99);
  const FockOperator mc2 = apply_monte_carlo(ch, a, 20000, 99);
  CHECK(hs_norm(mc1 - mc2) == 0.0);
  CHECK(trace_norm(mc1 - exact) <= 0.05);
  CHECK_THROWS_AS(apply_monte_carlo(ch, a, 0, 1), std::invalid_argument);
}

TEST_CASE("evolve_state: t = 0, trace, populations against the closed-form oracle") {
  std::mt19937_64 rng(21);
  const DensityOperator rho = random_density(20, 4, rng);
  const DensityOperator same = evolve_state({0.0}, rho);
  CHECK(trace_norm(same.op() - rho.op().embedded(same.dim())) <= 1e-3);

  for (double t : {0.25, 1.0}) {
    const DensityOperator r0 = evolve_state({t}, number_state(0, 40));
    const DensityOperator r1 = evolve_state({t}, number_state(1, 40));
    CHECK(std::abs(r0.op().trace() - 1.0) <= 1e-6);
    CHECK(std::abs(r1.op().trace() - 1.0) <= 1e-6);
    for (int n = 0; n < 40; ++n) {
      CHECK(std::abs(r0.op()(n, n).real() - oracle::vacuum_population(t, n)) <= 1e-6);
      CHECK(std::abs(r1.op()(n, n).real() - oracle::one_photon_population(t, n)) <= 1e-6);
    }
    // multiplier decay of the char function
    for (PhasePoint z : {PhasePoint{0.7, 0.0}, PhasePoint{-0.5, 1.0}}) {
      CHECK(std::abs(char_value(r1.op(), z) - std::exp(-t * z.norm2()) * char_value(number_state(1, 40).op(), z)) <=
            1e-3);
    }
  }
}

TEST_CASE("evolve_state: vacuum purity at t = 1 via the quadrature path") {
  EvolveOptions opts;
  opts.path = EvolutionPath::quadrature;
  const DensityOperator r = evolve_state({1.0}, number_state(0, 20), opts);
  CHECK(r.purity() < 0.35);
  CHECK(r.purity() == doctest::Approx(0.2).epsilon(1e-4));  // 1/(1 + 4t)
  CHECK(std::abs(r.op().trace() - 1.0) <= 1e-6);
}

TEST_CASE("evolve_state: too small a dimension budget is reported") {
  EvolveOptions opts;
  opts.max_dim = 30;
  CHECK_THROWS_AS(evolve_state({16.0}, number_state(0, 20), opts), TruncationError);
}
