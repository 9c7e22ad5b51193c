#include "ccrheat/channels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "ccrheat/errors.hpp"
#include "numerics.hpp"

namespace ccrheat {

namespace {

constexpr double pi = std::numbers::pi;
constexpr std::size_t kReductionChunks = 16;
// exp(-23) ~ 1e-10: multiplier cut-off for the spectral integration disk
constexpr double kMultiplierCut = 23.0;

double input_extent(int dim) { return std::sqrt(8.0 * dim + 4.0) + 4.0; }

}  // namespace

HeatFlowParams HeatFlowParams::checked(double t) {
  if (!std::isfinite(t) || t < 0.0) throw std::invalid_argument("heat flow time must be finite and >= 0");
  return HeatFlowParams{t};
}

double semigroup_multiplier(SemigroupKind kind, double t, PhasePoint z) {
  return kind == SemigroupKind::heat ? std::exp(-t * z.norm2()) : std::exp(-t * (std::abs(z.x) + std::abs(z.y)));
}

// --- conjugation scale ------------------------------------------------------

double calibrate_conjugation_scale() {
  const PhasePoint a{0.25, 0.5};
  const PhasePoint z{0.5, -0.4};
  const int dim = 24;
  const Matrix wa = weyl_operator(a, dim).matrix();
  const Matrix wz = weyl_operator(z, dim).matrix();
  const Matrix conj = wa * wz * wa.adjoint();
  // phase picked up by W_z under conjugation with W_a (unit scale)
  const double unit_phase = std::arg(conj(0, 0) / wz(0, 0));
  const GridSpec grid(1.0, 8);
  const double target = std::arg(symplectic_ft_at(point_mass(grid, a), z));
  return target / unit_phase;
}

double conjugation_scale() {
  static const double c = calibrate_conjugation_scale();
  return c;
}

// --- MeasureChannel ---------------------------------------------------------

int MeasureChannel::required_truncation(const GridMeasure& mu, double scale) {
  const double r = std::abs(scale) * mu.support_radius();
  return std::max(1, static_cast<int>(std::ceil(0.5 * r * r - 1e-9)));
}

MeasureChannel::MeasureChannel(GridMeasure mu, int truncation, double scale)
    : mu_(std::move(mu)), scale_(scale), truncation_(truncation) {
  if (!std::isfinite(scale_) || scale_ == 0.0) throw std::invalid_argument("conjugation scale must be finite, non-zero");
  if (truncation_ < 1) throw std::invalid_argument("channel truncation must be >= 1");
  if (!std::isfinite(total_variation(mu_))) throw std::invalid_argument("measure has infinite total variation");
  const int need = required_truncation(mu_, scale_);
  if (need > truncation_) {
    throw TruncationError("measure support leaves the displacement window: need N >= " + std::to_string(need) +
                          ", have " + std::to_string(truncation_));
  }
}

GridSpec heat_measure_grid(double t, int dim) {
  if (!(t > 0.0)) throw std::invalid_argument("heat_measure_grid: t must be > 0");
  const double capture = gaussian_capture_radius(t);
  const double h = std::min(std::sqrt(8.0 * t), 4.0 * pi / (input_extent(dim) + std::sqrt(21.0 / t)));
  return GridSpec::covering(capture + h, h);
}

MeasureChannel heat_channel(double t, int dim) {
  GridMeasure mu = gaussian_measure(t, heat_measure_grid(t, dim));
  const int need = MeasureChannel::required_truncation(mu);
  return MeasureChannel(std::move(mu), std::max(dim, need));
}

// --- quadrature path --------------------------------------------------------

std::vector<FockOperator> apply_quadrature(const MeasureChannel& ch, const std::vector<FockOperator>& ops) {
  if (ops.empty()) return {};
  const int n = ops.front().dim();
  for (const auto& op : ops) {
    if (op.dim() != n) throw std::invalid_argument("apply_quadrature: operators must share one dimension");
  }
  if (n > ch.truncation()) throw TruncationError("operator dimension exceeds the channel truncation");

  const GridMeasure& mu = ch.mu();
  std::vector<std::size_t> cells;
  for (std::size_t k = 0; k < mu.weights().size(); ++k) {
    if (mu.weights()[k] != cplx{}) cells.push_back(k);
  }
  const std::size_t chunk = std::max<std::size_t>(1, (cells.size() + kReductionChunks - 1) / kReductionChunks);
  const std::size_t chunks = (cells.size() + chunk - 1) / chunk;
  std::vector<std::vector<Matrix>> partial(chunks, std::vector<Matrix>(ops.size(), Matrix::Zero(n, n)));

  detail::parallel_chunks(cells.size(), chunk, [&](std::size_t c, std::size_t lo, std::size_t hi) {
    Matrix tmp(n, n);
    for (std::size_t i = lo; i < hi; ++i) {
      const PhasePoint zeta = mu.grid().point(cells[i]);
      const Matrix b = weyl_block(ch.scale() * zeta, n).matrix();
      const cplx w = mu.weights()[cells[i]];
      for (std::size_t k = 0; k < ops.size(); ++k) {
        tmp.noalias() = b * ops[k].matrix();
        partial[c][k].noalias() += w * (tmp * b.adjoint());
      }
    }
  });

  std::vector<FockOperator> out;
  out.reserve(ops.size());
  for (std::size_t k = 0; k < ops.size(); ++k) {
    Matrix acc = Matrix::Zero(n, n);
    for (const auto& p : partial) acc += p[k];
    out.emplace_back(std::move(acc));
  }
  return out;
}

FockOperator apply_quadrature(const MeasureChannel& ch, const FockOperator& a) {
  return apply_quadrature(ch, std::vector<FockOperator>{a}).front();
}

FockOperator apply_monte_carlo(const MeasureChannel& ch, const FockOperator& a, std::size_t samples,
                               std::uint64_t seed) {
  if (samples == 0) throw std::invalid_argument("apply_monte_carlo: need at least one sample");
  const int n = a.dim();
  if (n > ch.truncation()) throw TruncationError("operator dimension exceeds the channel truncation");
  const auto weights = ch.mu().weights();
  std::vector<double> probs(weights.size());
  for (std::size_t k = 0; k < weights.size(); ++k) probs[k] = std::abs(weights[k]);
  const double tv = total_variation(ch.mu());
  if (tv == 0.0) return FockOperator::zero(n);
  std::mt19937_64 rng(seed);
  std::discrete_distribution<std::size_t> pick(probs.begin(), probs.end());
  Matrix acc = Matrix::Zero(n, n);
  for (std::size_t s = 0; s < samples; ++s) {
    const std::size_t k = pick(rng);
    const Matrix b = weyl_block(ch.scale() * ch.mu().grid().point(k), n).matrix();
    acc += (weights[k] / std::abs(weights[k])) * (b * a.matrix() * b.adjoint());
  }
  return FockOperator(acc * (tv / static_cast<double>(samples)));
}

// --- spectral path ----------------------------------------------------------

SpectralPlan spectral_plan(SemigroupKind kind, double t, int dim_in, int dim_out) {
  if (dim_in < 1 || dim_out < 1) throw std::invalid_argument("spectral_plan: dimensions must be >= 1");
  if (!std::isfinite(t) || t < 0.0) throw std::invalid_argument("spectral_plan: t must be finite and >= 0");
  double reach = std::numeric_limits<double>::infinity();
  double spread = 0.0;
  if (kind == SemigroupKind::heat) {
    if (t > 0.0) reach = std::sqrt(kMultiplierCut / t);
    spread = 9.6 * std::sqrt(t);
  } else {
    if (t > 0.0) reach = kMultiplierCut / t;
    spread = 32.0 * t;
  }
  const double radius = std::min(reach, input_extent(dim_in));
  const int work = std::max({dim_in, dim_out, static_cast<int>(std::ceil(0.5 * radius * radius))});
  // the output char function pairs with <m|W|n> for m, n < dim_out; both live
  // in phase-space disks whose radii bound the sampling period needed
  const double span = std::sqrt(2.0 * dim_in + 1.0) + std::sqrt(2.0 * dim_out + 1.0) + spread + 2.0;
  const double h = 2.0 * pi / (1.25 * span);
  return SpectralPlan{GridSpec::covering(radius, h), radius, work};
}

namespace {

CharFunction multiplied_char(SemigroupKind kind, double t, const FockOperator& a, const SpectralPlan& plan) {
  const CharFunction f = char_function(a.embedded(plan.work_dim), plan.grid, plan.radius);
  std::vector<cplx> values(f.values().begin(), f.values().end());
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (values[k] != cplx{}) values[k] *= semigroup_multiplier(kind, t, plan.grid.point(k));
  }
  return CharFunction(plan.grid, std::move(values), plan.work_dim, plan.radius);
}

}  // namespace

FockOperator apply_spectral(HeatFlowParams params, const FockOperator& a, SemigroupKind kind, int out_dim) {
  const double t = HeatFlowParams::checked(params.t).t;
  if (out_dim == 0) out_dim = a.dim();
  const SpectralPlan plan = spectral_plan(kind, t, a.dim(), out_dim);
  InverseOptions opts;
  opts.probe_check = false;  // the plan fixes spacing and radius by rule
  return inverse_transform(multiplied_char(kind, t, a, plan), out_dim, opts);
}

int evolved_dimension(HeatFlowParams params, const DensityOperator& rho, double capture_tail, int max_dim) {
  const double t = HeatFlowParams::checked(params.t).t;
  if (t == 0.0) return rho.dim();
  if (max_dim < rho.dim()) throw std::invalid_argument("evolved_dimension: max_dim below input dimension");
  const double q = 2.0 * t / (2.0 * t + 1.0);
  int cap = rho.dim() + static_cast<int>(std::ceil(20.0 / -std::log(q))) + 16;
  cap = std::min(cap, max_dim);
  for (;;) {
    const SpectralPlan plan = spectral_plan(SemigroupKind::heat, t, rho.dim(), cap);
    const CharFunction f = multiplied_char(SemigroupKind::heat, t, rho.op(), plan);
    const double h2 = plan.grid.spacing() * plan.grid.spacing();
    std::vector<double> pop(cap, 0.0);
    for (std::size_t k = 0; k < f.values().size(); ++k) {
      const cplx v = f.values()[k];
      if (v == cplx{}) continue;
      const std::vector<double> d = weyl_diagonal(-plan.grid.point(k), cap);
      for (int n = 0; n < cap; ++n) pop[n] += (v * d[n]).real();
    }
    double cumulative = 0.0;
    for (int n = 0; n < cap; ++n) {
      cumulative += kPlancherelConstant * h2 * pop[n];
      if (n + 1 >= rho.dim() && cumulative >= 1.0 - capture_tail) return n + 1;
    }
    if (cap >= max_dim) {
      throw TruncationError("evolved state needs more than " + std::to_string(max_dim) + " levels (captured " +
                            std::to_string(cumulative) + ")");
    }
    cap = std::min(2 * cap, max_dim);
  }
}

DensityOperator evolve_state(HeatFlowParams params, const DensityOperator& rho, const EvolveOptions& opts) {
  const double t = HeatFlowParams::checked(params.t).t;
  if (t == 0.0) return rho;
  const int out = opts.out_dim > 0 ? opts.out_dim : evolved_dimension(params, rho, opts.capture_tail, opts.max_dim);
  if (out < rho.dim()) throw std::invalid_argument("evolve_state: output dimension below input dimension");

  Matrix m;
  if (opts.path == EvolutionPath::spectral) {
    m = apply_spectral(params, rho.op(), SemigroupKind::heat, out).matrix();
  } else {
    // mu_t is symmetric, so the predual map has the same quadrature form
    m = apply_quadrature(heat_channel(t, out), rho.op().embedded(out)).matrix();
  }
  m = 0.5 * (m + m.adjoint());
  const double tr = m.trace().real();
  if (std::abs(tr - 1.0) > 1e-6) {
    throw TruncationError("evolved trace drift " + std::to_string(tr - 1.0) + " exceeds 1e-6 at N = " +
                          std::to_string(out));
  }
  m /= tr;
  const FockOperator op(m);
  const double lowest = hermitian_eigenvalues(op)(0);
  if (lowest < -1e-8) {
    throw TruncationError("evolved state has eigenvalue " + std::to_string(lowest) + " at N = " + std::to_string(out));
  }
  return DensityOperator::from(op, 1e-8);
}

// --- checks -----------------------------------------------------------------

ExperimentReport generator_check(PhasePoint z, int dim, const std::vector<double>& t_values) {
  if (t_values.empty()) throw std::invalid_argument("generator_check: empty t list");
  for (std::size_t i = 0; i < t_values.size(); ++i) {
    if (!(t_values[i] > 0.0) || (i > 0 && !(t_values[i] < t_values[i - 1]))) {
      throw std::invalid_argument("generator_check: t values must be positive and strictly decreasing");
    }
  }
  const FockOperator w = weyl_operator(z, dim);
  const int block = std::max(1, dim / 2);
  const Matrix wb = w.matrix().topLeftCorner(block, block);
  const double target = -z.norm2();

  Json coefficients = Json::array();
  double coefficient = 0.0;
  double residual = 0.0;
  for (double t : t_values) {
    const Matrix phi = apply_quadrature(heat_channel(t, dim), w).matrix();
    const Matrix d = (phi.topLeftCorner(block, block) - wb) / t;
    const cplx k = (wb.adjoint() * d).trace() / wb.squaredNorm();
    coefficient = k.real();
    residual = (d - target * wb).norm() / wb.norm();
    coefficients.push_back({{"t", t}, {"re", k.real()}, {"im", k.imag()}, {"residual", residual}});
  }
  ExperimentReport r;
  r.check = "generator";
  r.params = {{"z", {z.x, z.y}}, {"truncation", dim}, {"block", block}, {"t_values", t_values}};
  r.measured = {{"coefficient", coefficient},
                {"expected", target},
                {"residual", residual},
                {"sweep", coefficients}};
  r.bound = 1e-2;
  r.pass = residual <= r.bound && std::abs(coefficient - target) <= 1e-2 * std::max(1.0, std::abs(target));
  return r;
}

Matrix choi_matrix(const MeasureChannel& ch, int n) {
  if (n < 1 || 4 * n > ch.truncation()) throw std::invalid_argument("choi_matrix: need 1 <= n <= truncation/4");
  std::vector<FockOperator> units;
  units.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) units.push_back(FockOperator::unit(n, i, j));
  }
  const auto images = apply_quadrature(ch, units);
  Matrix c = Matrix::Zero(n * n, n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) c.block(i * n, j * n, n, n) = images[static_cast<std::size_t>(i) * n + j].matrix();
  }
  return c;
}

ExperimentReport cb_distance_bound(const GridMeasure& mu, const GridMeasure& nu,
                                   const std::vector<FockOperator>& probes) {
  if (probes.empty()) throw std::invalid_argument("cb_distance_bound: no probe operators");
  const GridMeasure diff = mu - nu;
  const double tv = total_variation(diff);
  Json ratios = Json::array();
  Json gaps = Json::array();
  double worst = 0.0;
  if (tv > 0.0) {
    const int n = probes.front().dim();
    const MeasureChannel ch(diff, std::max(n, MeasureChannel::required_truncation(diff)));
    const auto images = apply_quadrature(ch, probes);
    for (std::size_t k = 0; k < probes.size(); ++k) {
      const double gap = operator_norm(images[k]);
      const double ratio = gap / (tv * operator_norm(probes[k]));
      gaps.push_back(gap);
      ratios.push_back(ratio);
      worst = std::max(worst, ratio);
    }
  } else {
    for (std::size_t k = 0; k < probes.size(); ++k) {
      gaps.push_back(0.0);
      ratios.push_back(0.0);
    }
  }
  ExperimentReport r;
  r.check = "cb_distance_bound";
  r.params = {{"probes", probes.size()}, {"grid", {mu.grid().half_width(), mu.grid().points()}}};
  r.measured = {{"total_variation", tv}, {"max_ratio", worst}, {"ratios", ratios}, {"gaps", gaps}};
  r.bound = 1.0 + 1e-6;
  r.pass = worst <= r.bound;
  return r;
}

}  // namespace ccrheat
