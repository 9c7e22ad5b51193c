#include "ccrheat/purity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ccrheat/errors.hpp"
#include "ccrheat/weyl_transform.hpp"

namespace ccrheat {

namespace {

constexpr double pi = std::numbers::pi;

void validate_times(const std::vector<double>& times) {
  if (times.empty()) throw std::invalid_argument("empty time grid");
  for (double t : times) {
    if (!std::isfinite(t) || t < 0.0) throw std::invalid_argument("times must be finite and >= 0");
  }
}

}  // namespace

bool DecayCurve::non_increasing(double tol) const {
  for (std::size_t i = 1; i < distances.size(); ++i) {
    if (distances[i] > distances[i - 1] + tol) return false;
  }
  return true;
}

bool DecayCurve::strictly_decreasing() const {
  for (std::size_t i = 1; i < distances.size(); ++i) {
    if (!(distances[i] < distances[i - 1])) return false;
  }
  return true;
}

std::vector<double> default_decay_times() { return {0.0, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0}; }

DecayCurve decay_curve(const DensityOperator& rho1, const DensityOperator& rho2, const std::vector<double>& times,
                       EvolutionPath path, std::string label1, std::string label2) {
  validate_times(times);
  if (rho1.dim() != rho2.dim()) throw std::invalid_argument("decay_curve: states must share a truncation");
  DecayCurve curve{times, {}, std::move(label1), std::move(label2)};
  for (double t : times) {
    const HeatFlowParams p = HeatFlowParams::checked(t);
    EvolveOptions opts;
    opts.path = path;
    opts.out_dim = std::max(evolved_dimension(p, rho1), evolved_dimension(p, rho2));
    const DensityOperator a = evolve_state(p, rho1, opts);
    const DensityOperator b = evolve_state(p, rho2, opts);
    curve.distances.push_back(trace_norm(a.op() - b.op()));
  }
  return curve;
}

namespace {

std::vector<PhasePoint> disk_sample(const GridSpec& grid, double epsilon) {
  std::vector<PhasePoint> sample;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (grid.point(k).norm() <= epsilon) sample.push_back(grid.point(k));
  }
  return sample;
}

}  // namespace

BandAnnihilation band_annihilated_distance(const FockOperator& a, double epsilon, const GridSpec& grid) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw std::invalid_argument("epsilon must be > 0");
  if (grid.spacing() > 0.25 * epsilon * (1.0 + 1e-12)) {
    throw GridError("constraint grid spacing " + std::to_string(grid.spacing()) + " exceeds epsilon/4");
  }
  return band_annihilated_distance(a, epsilon, disk_sample(grid, epsilon));
}

BandAnnihilation band_annihilated_distance(const FockOperator& a, double epsilon,
                                           const std::vector<PhasePoint>& sample) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw std::invalid_argument("epsilon must be > 0");
  if (epsilon > trustworthy_radius(a.dim())) {
    throw TruncationError("epsilon outside the trustworthy window at N = " + std::to_string(a.dim()));
  }
  for (PhasePoint z : sample) {
    if (z.norm() > epsilon * (1.0 + 1e-12)) throw std::invalid_argument("constraint point outside the epsilon disk");
  }
  const int n = a.dim();
  const int unknowns = n * n;
  const int m = static_cast<int>(sample.size());
  if (m >= unknowns) {
    throw InfeasibleError("band_annihilated_distance: " + std::to_string(m) + " constraints for " +
                          std::to_string(unknowns) + " unknowns at N = " + std::to_string(n) + ", epsilon = " +
                          std::to_string(epsilon));
  }

  BandAnnihilation out{epsilon, 0.0, 0.0, FockOperator::zero(n), m};
  if (m == 0) {
    out.approximant = a;
    return out;
  }
  // row r: vec(W_z^T), so that row . vec(B) = trace(B W_z)
  Matrix c(m, unknowns);
  for (int r = 0; r < m; ++r) {
    const Matrix wt = weyl_block(sample[r], n).matrix().transpose();
    c.row(r) = Eigen::Map<const Eigen::RowVectorXcd>(wt.data(), unknowns);
  }
  const Eigen::VectorXcd av = Eigen::Map<const Eigen::VectorXcd>(a.matrix().data(), unknowns);
  const Matrix ch = c.adjoint();
  const Eigen::CompleteOrthogonalDecomposition<Matrix> cod(ch);
  Eigen::VectorXcd bv = av - ch * cod.solve(av);
  // one refinement sweep pushes the constraint residual to roundoff
  bv -= ch * cod.solve(bv);
  Matrix b = Eigen::Map<const Matrix>(bv.data(), n, n);
  out.approximant = FockOperator(std::move(b));
  const FockOperator diff = a - out.approximant;
  out.trace_distance = trace_norm(diff);
  out.hs_distance = hs_norm(diff);
  return out;
}

std::vector<BandAnnihilation> band_annihilation_sweep(const FockOperator& a, const std::vector<double>& epsilons) {
  if (epsilons.empty()) throw std::invalid_argument("band_annihilation_sweep: empty epsilon list");
  std::vector<double> sorted = epsilons;
  std::sort(sorted.begin(), sorted.end());
  std::vector<PhasePoint> sample;
  std::vector<BandAnnihilation> by_size;
  for (double eps : sorted) {
    if (!(eps > 0.0) || !std::isfinite(eps)) throw std::invalid_argument("epsilon must be > 0");
    for (PhasePoint z : disk_sample(GridSpec::covering(eps, 0.25 * eps), eps)) {
      const bool seen = std::any_of(sample.begin(), sample.end(), [&](PhasePoint s) { return (s - z).norm() <= 1e-12; });
      if (!seen) sample.push_back(z);
    }
    by_size.push_back(band_annihilated_distance(a, eps, sample));
  }
  std::vector<BandAnnihilation> out;
  for (double eps : epsilons) {
    const auto it = std::find(sorted.begin(), sorted.end(), eps);
    out.push_back(by_size[static_cast<std::size_t>(it - sorted.begin())]);
  }
  return out;
}

GridSpec approximant_grid(double t, double delta) {
  if (!(t > 0.0) || !(delta > 0.0)) throw std::invalid_argument("approximant_grid: t and delta must be > 0");
  const double half = 64.0 * pi / delta;
  const double h_max = std::min(std::sqrt(8.0 * t), 0.63 / delta);
  int m = 2 * static_cast<int>(std::ceil(half / h_max));
  const GridSpec grid(half, m);
  if (grid.half_width() - grid.spacing() < gaussian_capture_radius(t)) {
    throw GridError("approximant_grid: t too large for delta (Gaussian support exceeds 64 pi / delta)");
  }
  return grid;
}

Json BoundCertificate::to_json() const {
  return Json{{"epsilon", epsilon}, {"delta", delta},       {"t", t},
              {"term1", term1},     {"term2", term2},       {"term3", term3},
              {"measured", measured}, {"tv_distance", tv_distance}, {"feasible", feasible},
              {"holds", holds()}};
}

BoundCertificate certified_bound(const DensityOperator& rho1, const DensityOperator& rho2, double t,
                                 double epsilon, double delta) {
  if (rho1.dim() != rho2.dim()) throw std::invalid_argument("certified_bound: states must share a truncation");
  if (!(t > 0.0) || !(epsilon > 0.0) || !(delta > 0.0)) {
    throw std::invalid_argument("certified_bound: need t > 0, epsilon > 0, delta > 0");
  }
  BoundCertificate cert;
  cert.epsilon = epsilon;
  cert.delta = delta;
  cert.t = t;

  const FockOperator omega = rho1.op() - rho2.op();
  const GridSpec grid = approximant_grid(t, delta);
  const GridMeasure mu = gaussian_measure(t, grid);
  const GridMeasure nu = band_limited_approximant(t, delta, grid);
  cert.tv_distance = total_variation_distance(mu, nu);

  // certificate points lie on the dual lattice, where FT(nu_t) vanishes
  // exactly beyond delta
  const double dual_step = 2.0 * pi / grid.half_width();
  const double spacing = dual_step * std::floor(0.25 * delta / dual_step + 1e-9);
  const GridSpec cert_grid = GridSpec::covering(2.0 * delta, spacing);

  const BandAnnihilation band = band_annihilated_distance(omega, delta, cert_grid);
  const FockOperator& omega0 = band.approximant;
  cert.term1 = band.trace_distance;
  cert.term2 = trace_norm(omega0) * cert.tv_distance;

  const SampledFunction nu_hat = symplectic_ft(nu, cert_grid);
  const CharFunction omega0_hat = char_function(omega0, cert_grid, 2.0 * delta);
  cplx inner = 0.0;
  for (std::size_t k = 0; k < cert_grid.size(); ++k) {
    if (cert_grid.point(k).norm() <= 2.0 * delta) inner += nu_hat.values()[k] * omega0_hat.values()[k];
  }
  cert.term3 = std::abs(inner);

  const HeatFlowParams p = HeatFlowParams::checked(t);
  EvolveOptions opts;
  opts.out_dim = std::max(evolved_dimension(p, rho1), evolved_dimension(p, rho2));
  cert.measured = trace_norm(evolve_state(p, rho1, opts).op() - evolve_state(p, rho2, opts).op());
  cert.feasible = cert.term1 <= epsilon;
  return cert;
}

ExperimentReport absorbing_state_probe(const std::vector<double>& times, const std::vector<DensityOperator>& probes,
                                       int directions) {
  validate_times(times);
  if (probes.empty()) throw std::invalid_argument("absorbing_state_probe: no probe states");
  if (directions < 1) throw std::invalid_argument("absorbing_state_probe: need >= 1 direction");
  std::vector<PhasePoint> ring;
  for (int d = 0; d < directions; ++d) {
    const double th = 2.0 * pi * d / directions;
    ring.push_back({std::cos(th), std::sin(th)});
  }

  double max_err = 0.0;
  double min_variation = std::numeric_limits<double>::infinity();
  Json per_probe = Json::array();
  for (const DensityOperator& rho : probes) {
    std::vector<cplx> base;
    for (PhasePoint z : ring) base.push_back(char_value(rho.op(), z));
    std::vector<std::vector<cplx>> evolved;
    Json ring_max = Json::array();
    for (double t : times) {
      const DensityOperator rt = evolve_state(HeatFlowParams::checked(t), rho);
      std::vector<cplx> vals;
      double peak = 0.0;
      for (std::size_t i = 0; i < ring.size(); ++i) {
        const cplx v = char_value(rt.op(), ring[i]);
        max_err = std::max(max_err, std::abs(v - std::exp(-t) * base[i]));
        peak = std::max(peak, std::abs(v));
        vals.push_back(v);
      }
      evolved.push_back(std::move(vals));
      ring_max.push_back(peak);
    }
    double variation = 0.0;
    for (std::size_t i = 0; i < ring.size(); ++i) {
      variation = std::max(variation, std::abs(evolved.back()[i] - evolved.front()[i]));
    }
    if (times.size() > 1) min_variation = std::min(min_variation, variation);
    per_probe.push_back({{"dim", rho.dim()}, {"ring_max", ring_max}, {"variation", variation}});
  }

  ExperimentReport r;
  r.check = "absorbing_state_probe";
  r.params = {{"times", times}, {"probes", probes.size()}, {"directions", directions}, {"radius", 1.0}};
  const bool varies = times.size() < 2 || times.front() == times.back() || min_variation > 1e-3;
  r.measured = {{"max_error", max_err},
                {"min_variation", std::isfinite(min_variation) ? min_variation : 0.0},
                {"probes", per_probe}};
  r.bound = 1e-3;
  r.pass = max_err <= r.bound && varies;
  return r;
}

}  // namespace ccrheat
