#include "ccrheat/phase_space.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ccrheat/errors.hpp"
#include "ccrheat/simd/kernels.hpp"
#include "numerics.hpp"

namespace ccrheat {

using std::numbers::pi;

namespace {

constexpr double kLatticeTol = 1e-9;
constexpr double kGaussianTail = 1e-10;

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument(std::string(what) + " must be positive and finite");
  }
}

void require_same_grid(const GridMeasure& a, const GridMeasure& b) {
  if (!(a.grid() == b.grid())) throw GridError("measures live on different grids");
}

}  // namespace

PhasePoint PhasePoint::checked(double x, double y) {
  if (!std::isfinite(x) || !std::isfinite(y)) {
    throw std::invalid_argument("phase point coordinates must be finite");
  }
  return {x, y};
}

double PhasePoint::norm() const { return std::hypot(x, y); }

double omega(PhasePoint z1, PhasePoint z2) { return 0.5 * (z2.x * z1.y - z1.x * z2.y); }

// --- GridSpec ---------------------------------------------------------------

GridSpec::GridSpec(double half_width, int points_per_axis)
    : half_width_(half_width), points_(points_per_axis), spacing_(0.0) {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw GridError("grid half-width must be positive and finite");
  }
  if (points_per_axis < 2 || points_per_axis % 2 != 0) {
    throw GridError("grid points per axis must be even and >= 2");
  }
  spacing_ = 2.0 * half_width / points_per_axis;
}

GridSpec GridSpec::covering(double extent, double spacing) {
  require_positive(extent, "grid extent");
  require_positive(spacing, "grid spacing");
  // sample range is [-(M/2) h, (M/2 - 1) h]
  const int half = static_cast<int>(std::ceil(extent / spacing - 1e-12)) + 1;
  return GridSpec(half * spacing, 2 * half);
}

PhasePoint GridSpec::point(std::size_t flat) const {
  return point(static_cast<int>(flat / points_), static_cast<int>(flat % points_));
}

double GridSpec::max_radius() const { return std::sqrt(2.0) * half_width_; }

std::optional<int> GridSpec::index_of(double c) const {
  const double pos = (c + half_width_) / spacing_;
  const double rounded = std::round(pos);
  if (std::abs(pos - rounded) > kLatticeTol) return std::nullopt;
  if (rounded < 0 || rounded >= points_) return std::nullopt;
  return static_cast<int>(rounded);
}

bool GridSpec::same_lattice(const GridSpec& other) const {
  return std::abs(spacing_ - other.spacing_) <= 1e-12 * std::max(spacing_, other.spacing_);
}

// --- GridMeasure / SampledFunction -----------------------------------------

GridMeasure::GridMeasure(GridSpec grid) : grid_(grid), weights_(grid.size()) {}

GridMeasure::GridMeasure(GridSpec grid, std::vector<cplx> weights)
    : grid_(grid), weights_(std::move(weights)) {
  if (weights_.size() != grid_.size()) throw GridError("weight count does not match grid size");
  for (const cplx& w : weights_) {
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
      throw std::invalid_argument("measure weights must be finite");
    }
  }
}

cplx GridMeasure::total_mass() const {
  cplx total{};
  for (const cplx& w : weights_) total += w;
  return total;
}

double GridMeasure::support_radius() const {
  double r2 = 0.0;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (weights_[i] != cplx{}) r2 = std::max(r2, grid_.point(i).norm2());
  }
  return std::sqrt(r2);
}

bool GridMeasure::is_probability(double tol) const {
  for (const cplx& w : weights_) {
    if (w.imag() != 0.0 || w.real() < 0.0) return false;
  }
  return std::abs(total_mass() - 1.0) <= tol;
}

GridMeasure& GridMeasure::operator*=(cplx s) {
  for (cplx& w : weights_) w *= s;
  return *this;
}

GridMeasure operator-(const GridMeasure& a, const GridMeasure& b) {
  require_same_grid(a, b);
  GridMeasure out(a.grid());
  for (std::size_t i = 0; i < out.weights_.size(); ++i) out.weights_[i] = a.weights_[i] - b.weights_[i];
  return out;
}

GridMeasure operator+(const GridMeasure& a, const GridMeasure& b) {
  require_same_grid(a, b);
  GridMeasure out(a.grid());
  for (std::size_t i = 0; i < out.weights_.size(); ++i) out.weights_[i] = a.weights_[i] + b.weights_[i];
  return out;
}

SampledFunction::SampledFunction(GridSpec grid, std::vector<cplx> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) throw GridError("value count does not match grid size");
  for (const cplx& v : values_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw std::invalid_argument("sampled values must be finite");
    }
  }
}

double SampledFunction::sup_abs_outside(double radius) const {
  double sup = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (grid_.point(i).norm() >= radius) sup = std::max(sup, std::abs(values_[i]));
  }
  return sup;
}

double SampledFunction::sup_abs_inside(double radius) const {
  double sup = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (grid_.point(i).norm() <= radius) sup = std::max(sup, std::abs(values_[i]));
  }
  return sup;
}

GridMeasure point_mass(const GridSpec& grid, PhasePoint z, cplx mass) {
  const auto ix = grid.index_of(z.x);
  const auto iy = grid.index_of(z.y);
  if (!ix || !iy) throw GridError("point mass location is not a grid point");
  GridMeasure mu(grid);
  mu.weight(*ix, *iy) = mass;
  return mu;
}

double total_variation(const GridMeasure& mu) {
  return simd::abs_sum(mu.weights().data(), mu.weights().size());
}

double total_variation_distance(const GridMeasure& mu, const GridMeasure& nu) {
  require_same_grid(mu, nu);
  return simd::abs_diff_sum(mu.weights().data(), nu.weights().data(), mu.weights().size());
}

// --- Fourier transform ------------------------------------------------------

SampledFunction symplectic_ft(const GridMeasure& mu, const GridSpec& dual) {
  const double guard = mu.grid().spacing() * dual.half_width();
  if (guard > 0.5 * pi * (1.0 + 1e-12)) {
    throw GridError("dual grid too wide for the measure spacing (h * L_dual = " +
                    std::to_string(guard) + " > pi/2)");
  }
  return SampledFunction(dual, detail::phase_sum(mu.weights(), mu.grid(), dual));
}

cplx symplectic_ft_at(const GridMeasure& mu, PhasePoint zeta) {
  const GridSpec& g = mu.grid();
  const int m = g.points();
  std::vector<cplx> ey(m);
  for (int k = 0; k < m; ++k) ey[k] = std::polar(1.0, -0.5 * zeta.x * g.coord(k));
  cplx total{};
  for (int j = 0; j < m; ++j) {
    const cplx row = simd::cdotu(&mu.weights()[g.index(j, 0)], ey.data(), m);
    if (row != cplx{}) total += std::polar(1.0, 0.5 * g.coord(j) * zeta.y) * row;
  }
  return total;
}

// --- Convolution ------------------------------------------------------------

namespace {

struct Box {
  int x0, x1, y0, y1;  // inclusive; empty when x0 > x1
  bool empty() const { return x0 > x1; }
};

Box nonzero_box(const GridMeasure& mu) {
  const int m = mu.grid().points();
  Box b{m, -1, m, -1};
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (mu.weight(i, j) == cplx{}) continue;
      b.x0 = std::min(b.x0, i);
      b.x1 = std::max(b.x1, i);
      b.y0 = std::min(b.y0, j);
      b.y1 = std::max(b.y1, j);
    }
  }
  return b;
}

}  // namespace

GridMeasure convolve(const GridMeasure& mu, const GridMeasure& nu, const GridSpec& out) {
  if (!mu.grid().same_lattice(nu.grid()) || !mu.grid().same_lattice(out)) {
    throw GridError("convolution requires grids with a common spacing");
  }
  GridMeasure result(out);
  const Box a = nonzero_box(mu);
  const Box b = nonzero_box(nu);
  if (a.empty() || b.empty()) return result;
  // index of z_i + w_k on `out` is i + k + offset
  const int offset = (out.points() - mu.grid().points() - nu.grid().points()) / 2;
  const int lo_x = a.x0 + b.x0 + offset;
  const int hi_x = a.x1 + b.x1 + offset;
  const int lo_y = a.y0 + b.y0 + offset;
  const int hi_y = a.y1 + b.y1 + offset;
  if (lo_x < 0 || lo_y < 0 || hi_x >= out.points() || hi_y >= out.points()) {
    throw SupportOverflow("convolution support does not fit the output grid");
  }
  const int run = b.y1 - b.y0 + 1;
  for (int i = a.x0; i <= a.x1; ++i) {
    for (int j = a.y0; j <= a.y1; ++j) {
      const cplx w = mu.weight(i, j);
      if (w == cplx{}) continue;
      for (int k = b.x0; k <= b.x1; ++k) {
        simd::caxpy(w, &nu.weights()[nu.grid().index(k, b.y0)],
                    &result.weights()[out.index(i + k + offset, j + b.y0 + offset)], run);
      }
    }
  }
  return result;
}

GridMeasure convolve(const GridMeasure& mu, const GridMeasure& nu) {
  const int points = mu.grid().points() + nu.grid().points();
  const GridSpec out(0.5 * points * mu.grid().spacing(), points);
  return convolve(mu, nu, out);
}

// --- Gaussian family --------------------------------------------------------

double gaussian_density(double t, PhasePoint z) {
  require_positive(t, "t");
  return std::exp(-z.norm2() / (16.0 * t)) / (16.0 * pi * t);
}

double gaussian_capture_radius(double t) {
  require_positive(t, "t");
  // P(|z| > R) = exp(-R^2 / (16 t)) for covariance 8t per axis
  return std::sqrt(-16.0 * t * std::log(kGaussianTail));
}

GridMeasure gaussian_measure(double t, const GridSpec& grid) {
  require_positive(t, "t");
  const double radius = gaussian_capture_radius(t);
  if (grid.half_width() - grid.spacing() < radius) {
    throw GridError("grid too narrow for gaussian_measure(t=" + std::to_string(t) +
                    "): need half-width > " + std::to_string(radius + grid.spacing()));
  }
  if (grid.spacing() > std::sqrt(8.0 * t)) {
    throw GridError("grid too coarse for gaussian_measure(t=" + std::to_string(t) + ")");
  }
  GridMeasure mu(grid);
  const double cell = grid.spacing() * grid.spacing();
  double total = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const PhasePoint z = grid.point(i);
    if (z.norm() > radius) continue;
    const double w = gaussian_density(t, z) * cell;
    mu.weights()[i] = w;
    total += w;
  }
  mu *= 1.0 / total;
  return mu;
}

// --- Cauchy family ----------------------------------------------------------

namespace {
double cauchy_1d(double scale, double x) { return scale / (pi * (x * x + scale * scale)); }
}  // namespace

double cauchy_density(double t, PhasePoint z) {
  require_positive(t, "t");
  // FT of a 1D Cauchy law of scale s is exp(-s |k|); omega pairs each
  // coordinate with half the dual one, so the scale is 2t.
  const double scale = 2.0 * t;
  return cauchy_1d(scale, z.x) * cauchy_1d(scale, z.y);
}

double cauchy_mass_deficit(double t, const GridSpec& grid) {
  require_positive(t, "t");
  // the outermost row/column is left empty to keep the support symmetric
  const double reach = grid.half_width() - 0.5 * grid.spacing();
  const double axis = 2.0 / pi * std::atan(reach / (2.0 * t));
  return 1.0 - axis * axis;
}

GridMeasure cauchy_measure(double t, const GridSpec& grid) {
  require_positive(t, "t");
  const double deficit = cauchy_mass_deficit(t, grid);
  if (deficit > kCauchyMaxMassDeficit) {
    throw GridError("grid too narrow for cauchy_measure(t=" + std::to_string(t) +
                    "): mass deficit " + std::to_string(deficit));
  }
  if (grid.spacing() > 2.0 * t) {
    throw GridError("grid too coarse for cauchy_measure(t=" + std::to_string(t) + ")");
  }
  const int m = grid.points();
  std::vector<double> axis(m, 0.0);
  for (int i = 1; i < m; ++i) axis[i] = cauchy_1d(2.0 * t, grid.coord(i)) * grid.spacing();
  GridMeasure mu(grid);
  double total = 0.0;
  for (int i = 1; i < m; ++i) {
    for (int j = 1; j < m; ++j) {
      mu.weight(i, j) = axis[i] * axis[j];
      total += axis[i] * axis[j];
    }
  }
  mu *= 1.0 / total;
  return mu;
}

// --- Plateau bump and band-limited approximant ------------------------------

namespace {

constexpr int kMollifierNodes = 48;

double mollifier_shape(double s) {  // s = rho / eps in [0, 1)
  const double q = 1.0 - s * s;
  return q <= 0.0 ? 0.0 : std::exp(-1.0 / q);
}

}  // namespace

double plateau_profile(double delta, double r) {
  require_positive(delta, "delta");
  r = std::abs(r);
  const double disk = 0.375 * delta;  // 3 delta / 8
  const double eps = 0.125 * delta;   // mollifier radius delta / 8
  if (r <= disk - eps) return 1.0;
  if (r >= disk + eps) return 0.0;

  // fraction of the mollifier mass (radially symmetric, radius eps, centered
  // at distance r) lying inside the disk
  auto angular_inside = [&](double rho) {
    if (rho <= 0.0) return r <= disk ? 2.0 * pi : 0.0;
    const double c = (r * r + rho * rho - disk * disk) / (2.0 * r * rho);
    if (c <= -1.0) return 2.0 * pi;
    if (c >= 1.0) return 0.0;
    return 2.0 * std::acos(c);
  };
  auto integrate = [&](double a, double b, auto&& f) {
    if (b <= a) return 0.0;
    const auto rule = detail::gauss_legendre(kMollifierNodes, a, b);
    double s = 0.0;
    for (int i = 0; i < kMollifierNodes; ++i) s += rule.weights[i] * f(rule.nodes[i]);
    return s;
  };
  auto inside = [&](double rho) { return mollifier_shape(rho / eps) * rho * angular_inside(rho); };
  auto whole = [&](double rho) { return mollifier_shape(rho / eps) * rho * 2.0 * pi; };
  // the angular factor has a kink where the circle of radius rho becomes tangent
  const double kink = std::clamp(std::abs(r - disk), 0.0, eps);
  const double num = integrate(0.0, kink, inside) + integrate(kink, eps, inside);
  const double den = integrate(0.0, kink, whole) + integrate(kink, eps, whole);
  return std::clamp(num / den, 0.0, 1.0);
}

SampledFunction plateau_bump(double delta, const GridSpec& dual) {
  require_positive(delta, "delta");
  if (dual.spacing() > delta / 16.0 * (1.0 + 1e-12)) {
    throw GridError("dual grid too coarse for plateau_bump: spacing must be <= delta/16");
  }
  std::vector<cplx> values(dual.size());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = plateau_profile(delta, dual.point(i).norm());
  return SampledFunction(dual, std::move(values));
}

GridSpec band_limit_dual_grid(const GridSpec& grid, double extent) {
  require_positive(extent, "extent");
  const double step = 2.0 * pi / grid.half_width();
  const int half = static_cast<int>(std::ceil(extent / step - 1e-12));
  return GridSpec(half * step, 2 * half);
}

GridMeasure band_limited_approximant(double t, double delta, const GridSpec& grid) {
  require_positive(t, "t");
  require_positive(delta, "delta");
  const double dual_step = 2.0 * pi / grid.half_width();
  if (dual_step > delta / 16.0 * (1.0 + 1e-12)) {
    throw GridError("grid half-width must be >= 32 pi / delta for band_limited_approximant");
  }
  // validates extent and spacing for mu_t as well
  (void)gaussian_measure(t, grid);

  // f_t = sqrt(u_t) sampled as a measure with weights f_t(z) h^2
  const double cell = grid.spacing() * grid.spacing();
  GridMeasure f(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    f.weights()[i] = std::sqrt(gaussian_density(t, grid.point(i))) * cell;
  }

  // dual box holding the support |zeta| <= delta/2 of the plateau
  const int half = static_cast<int>(std::floor(0.5 * delta / dual_step)) + 1;
  const GridSpec box(half * dual_step, 2 * half);
  const std::vector<cplx> f_hat = detail::phase_sum(f.weights(), grid, box);

  // g * f_t = inverse FT of plateau * f_hat; inverse kernel exp(-i omega(zeta, z)) / (16 pi^2)
  std::vector<cplx> coeff(box.size());
  const double dual_cell = dual_step * dual_step / (16.0 * pi * pi);
  for (std::size_t i = 0; i < box.size(); ++i) {
    coeff[i] = plateau_profile(delta, box.point(i).norm()) * f_hat[i] * dual_cell;
  }
  // sum_zeta c(zeta) exp(-i omega(zeta, z)) = sum_zeta c(zeta) exp(i omega(z, zeta))
  const std::vector<cplx> smoothed = detail::phase_sum(coeff, box, grid);

  GridMeasure nu(grid);
  double total = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double w = std::norm(smoothed[i]) * cell;
    nu.weights()[i] = w;
    total += w;
  }
  if (!(total > 0.0)) throw GridError("band-limited approximant has zero mass");
  nu *= 1.0 / total;
  return nu;
}

SampledFunction sqrt_density_ft_profile(double t, const GridSpec& dual) {
  require_positive(t, "t");
  // f_t is a Gaussian with variance 16t per axis; exp(-L^2 / (32 t)) < 1e-19
  const double spacing = std::min(0.5 * pi / dual.half_width(), std::sqrt(16.0 * t) / 3.0);
  const double extent = std::sqrt(32.0 * t * 44.0);
  const int half = static_cast<int>(std::ceil(extent / spacing));
  const GridSpec grid(half * spacing, 2 * half);
  GridMeasure f(grid);
  const double cell = spacing * spacing;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    f.weights()[i] = std::sqrt(gaussian_density(t, grid.point(i))) * cell;
  }
  return symplectic_ft(f, dual);
}

double sqrt_density_ft_reference(double t, PhasePoint zeta) {
  require_positive(t, "t");
  return 8.0 * std::sqrt(pi) * std::sqrt(t) * std::exp(-2.0 * t * zeta.norm2());
}

}  // namespace ccrheat
