#pragma once
// Phase-plane geometry and the measure algebra M(R^2) at grid scale.
//
// Conventions used throughout the library:
//   omega((x, y), (x', y')) = (x' y - x y') / 2
//   FT(mu)(zeta)            = sum over cells of exp(i omega(zeta, z)) * weight(z)
// A grid with half-width L and M points per axis has spacing h = 2L/M and
// sample points -L + i h, i = 0..M-1. All grids with the same spacing share
// the lattice hZ^2, which makes cell-index convolution exact.

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace ccrheat {

using cplx = std::complex<double>;

struct PhasePoint {
  double x = 0.0;
  double y = 0.0;

  // Throws std::invalid_argument unless both coordinates are finite.
  static PhasePoint checked(double x, double y);

  double norm2() const { return x * x + y * y; }
  double norm() const;

  friend PhasePoint operator+(PhasePoint a, PhasePoint b) { return {a.x + b.x, a.y + b.y}; }
  friend PhasePoint operator-(PhasePoint a, PhasePoint b) { return {a.x - b.x, a.y - b.y}; }
  friend PhasePoint operator-(PhasePoint a) { return {-a.x, -a.y}; }
  friend PhasePoint operator*(double s, PhasePoint a) { return {s * a.x, s * a.y}; }
  friend bool operator==(PhasePoint, PhasePoint) = default;
};

// The symplectic form.
double omega(PhasePoint z1, PhasePoint z2);

class GridSpec {
 public:
  // half_width > 0, points_per_axis even and >= 2; throws GridError otherwise.
  GridSpec(double half_width, int points_per_axis);

  // Grid of the given spacing whose sample range covers [-extent, extent].
  static GridSpec covering(double extent, double spacing);

  double half_width() const { return half_width_; }
  int points() const { return points_; }
  double spacing() const { return spacing_; }
  std::size_t size() const { return static_cast<std::size_t>(points_) * points_; }

  double coord(int i) const { return -half_width_ + i * spacing_; }
  PhasePoint point(int ix, int iy) const { return {coord(ix), coord(iy)}; }
  PhasePoint point(std::size_t flat) const;
  std::size_t index(int ix, int iy) const {
    return static_cast<std::size_t>(ix) * points_ + static_cast<std::size_t>(iy);
  }
  // Largest |z| over the sample points.
  double max_radius() const;

  // Axis index of a coordinate that lies on this grid's lattice.
  std::optional<int> index_of(double coord) const;

  // Same spacing (relative tolerance 1e-12), hence the same lattice.
  bool same_lattice(const GridSpec& other) const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  double half_width_;
  int points_;
  double spacing_;
};

// A complex measure: one weight per sample point (mass assigned to that cell).
class GridMeasure {
 public:
  explicit GridMeasure(GridSpec grid);
  GridMeasure(GridSpec grid, std::vector<cplx> weights);

  const GridSpec& grid() const { return grid_; }
  std::span<const cplx> weights() const { return weights_; }
  std::span<cplx> weights() { return weights_; }
  cplx weight(int ix, int iy) const { return weights_[grid_.index(ix, iy)]; }
  cplx& weight(int ix, int iy) { return weights_[grid_.index(ix, iy)]; }

  cplx total_mass() const;
  // Largest |z| over cells carrying nonzero weight (0 for the zero measure).
  double support_radius() const;
  // Real, non-negative, total mass 1 within tol.
  bool is_probability(double tol = 1e-9) const;

  GridMeasure& operator*=(cplx s);
  friend GridMeasure operator-(const GridMeasure& a, const GridMeasure& b);
  friend GridMeasure operator+(const GridMeasure& a, const GridMeasure& b);

 private:
  GridSpec grid_;
  std::vector<cplx> weights_;
};

// Values of a function sampled at the points of a (dual) grid.
class SampledFunction {
 public:
  SampledFunction(GridSpec grid, std::vector<cplx> values);

  const GridSpec& grid() const { return grid_; }
  std::span<const cplx> values() const { return values_; }
  cplx value(int ix, int iy) const { return values_[grid_.index(ix, iy)]; }

  // max |value| over points with |zeta| >= radius (0 if there are none).
  double sup_abs_outside(double radius) const;
  // max |value| over points with |zeta| <= radius.
  double sup_abs_inside(double radius) const;

 private:
  GridSpec grid_;
  std::vector<cplx> values_;
};

GridMeasure point_mass(const GridSpec& grid, PhasePoint z, cplx mass = 1.0);

double total_variation(const GridMeasure& mu);
// ||mu - nu|| for measures on the same grid.
double total_variation_distance(const GridMeasure& mu, const GridMeasure& nu);

// Rejects dual grids with spacing(mu) * half_width(dual) > pi/2.
SampledFunction symplectic_ft(const GridMeasure& mu, const GridSpec& dual);
// Direct evaluation at one point; no aliasing guard.
cplx symplectic_ft_at(const GridMeasure& mu, PhasePoint zeta);

// Exact cell-index convolution onto the smallest grid holding every sum.
GridMeasure convolve(const GridMeasure& mu, const GridMeasure& nu);
// Same, onto a caller-chosen grid; throws SupportOverflow if any nonzero
// product would land outside it.
GridMeasure convolve(const GridMeasure& mu, const GridMeasure& nu, const GridSpec& out);

// --- Gaussian family: FT(mu_t)(zeta) = exp(-t |zeta|^2) ---------------------

double gaussian_density(double t, PhasePoint z);
// Radius outside which the Gaussian mass is below 1e-10; weights beyond it are
// set to zero so the measure has an explicit, symmetric support.
double gaussian_capture_radius(double t);
GridMeasure gaussian_measure(double t, const GridSpec& grid);

// --- Cauchy family: FT(mu)(zeta) = exp(-t (|zeta_x| + |zeta_y|)) ------------

inline constexpr double kCauchyMaxMassDeficit = 1e-2;
double cauchy_density(double t, PhasePoint z);
double cauchy_mass_deficit(double t, const GridSpec& grid);
GridMeasure cauchy_measure(double t, const GridSpec& grid);

// --- Band-limited approximation of mu_t ------------------------------------

// Radial plateau profile: 1 for r <= delta/4, 0 for r >= delta/2, smooth and
// non-increasing in between (disk of radius 3 delta/8 mollified at delta/8).
double plateau_profile(double delta, double r);
SampledFunction plateau_bump(double delta, const GridSpec& dual);

// Dual lattice on which band-limited constructions over `grid` are exact:
// spacing 2 pi / half_width(grid), half-width >= extent.
GridSpec band_limit_dual_grid(const GridSpec& grid, double extent);

// Probability measure nu_t with FT vanishing for |zeta| >= delta (exactly at
// the points of band_limit_dual_grid(grid, .)), built as |g * f_t|^2 with
// f_t = sqrt(density of mu_t), then rescaled to mass 1.
GridMeasure band_limited_approximant(double t, double delta, const GridSpec& grid);

// FT of f_t = sqrt(density of mu_t), computed numerically on an internal grid.
SampledFunction sqrt_density_ft_profile(double t, const GridSpec& dual);
// K sqrt(t) exp(-2 t |zeta|^2) with K = 8 sqrt(pi).
double sqrt_density_ft_reference(double t, PhasePoint zeta);

}  // namespace ccrheat
