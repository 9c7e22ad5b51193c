#pragma once
// Operator Fourier transform A^(z) = trace(A W_z), its inversion and
// Riemann-Lebesgue profiling.

#include <numbers>
#include <vector>

#include "ccrheat/fock.hpp"
#include "ccrheat/phase_space.hpp"

namespace ccrheat {

// Radius |z| <= sqrt(2N) (|alpha|^2 <= N) inside which Weyl matrix elements
// at truncation N are used.
double trustworthy_radius(int dim);

// Sampled characteristic function. Values are stored for every grid point but
// only points with |z| <= support_radius carry data; the rest are zero.
class CharFunction {
 public:
  CharFunction(GridSpec grid, std::vector<cplx> values, int source_dim, double support_radius);

  const GridSpec& grid() const { return grid_; }
  std::span<const cplx> values() const { return values_; }
  cplx value(int ix, int iy) const { return values_[grid_.index(ix, iy)]; }
  int source_dim() const { return source_dim_; }
  double support_radius() const { return support_radius_; }
  bool in_support(PhasePoint z) const { return z.norm() <= support_radius_; }

  SampledFunction as_sampled() const { return SampledFunction(grid_, values_); }

 private:
  GridSpec grid_;
  std::vector<cplx> values_;
  int source_dim_;
  double support_radius_;
};

cplx char_value(const FockOperator& a, PhasePoint z);

// Samples trace(A W_z) on grid points with |z| <= radius. Throws
// TruncationError if radius exceeds trustworthy_radius(A.dim()).
CharFunction char_function(const FockOperator& a, const GridSpec& grid, double radius);
// Whole grid (radius = grid.max_radius()).
CharFunction char_function(const FockOperator& a, const GridSpec& grid);

// Analytic inversion constant: A = c_inv * int A^(z) W_z^dag dz.
inline constexpr double kPlancherelConstant = 1.0 / (2.0 * std::numbers::pi);

struct InverseOptions {
  // Round trip of |0><0| on the same grid and support; rejects the grid with
  // GridError if its trace-norm error exceeds probe_tolerance.
  bool probe_check = true;
  double probe_tolerance = 1e-3;
  double constant = kPlancherelConstant;
};

// c_inv * sum_z F(z) W_z^dag h^2 over the support, at truncation dim <=
// source_dim.
FockOperator inverse_transform(const CharFunction& f, int dim, const InverseOptions& opts = {});

// Least-squares constant c minimising ||P - c sum_z P^(z) W_z^dag h^2||_HS for
// the vacuum projector P at truncation dim.
double calibrate_inverse_constant(const GridSpec& grid, double radius, int dim);

// For each R: max over `directions` equally spaced angles of |A^(z)|, |z| = R.
// Throws TruncationError if any R exceeds trustworthy_radius(A.dim()).
std::vector<double> riemann_lebesgue_profile(const FockOperator& a, const std::vector<double>& radii,
                                             int directions = 64);

}  // namespace ccrheat
