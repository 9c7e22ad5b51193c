#include "ccrheat/weyl_transform.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ccrheat/errors.hpp"
#include "ccrheat/simd/kernels.hpp"
#include "numerics.hpp"

namespace ccrheat {

namespace {

// Partial sums are kept per chunk and added in chunk order, so the result
// does not depend on the number of worker threads.
constexpr std::size_t kReductionChunks = 16;

void require_window(double radius, int dim) {
  if (radius > trustworthy_radius(dim) * (1.0 + 1e-12)) {
    throw TruncationError("radius " + std::to_string(radius) + " exceeds the trustworthy window " +
                          std::to_string(trustworthy_radius(dim)) + " at N = " + std::to_string(dim));
  }
}

std::vector<std::size_t> disk_points(const GridSpec& grid, double radius) {
  std::vector<std::size_t> pts;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (grid.point(k).norm() <= radius) pts.push_back(k);
  }
  return pts;
}

// Smallest e with A supported on the leading e x e block.
int effective_dim(const Matrix& a) {
  for (int e = static_cast<int>(a.rows()); e > 1; --e) {
    if (a.row(e - 1).cwiseAbs().maxCoeff() != 0.0 || a.col(e - 1).cwiseAbs().maxCoeff() != 0.0) return e;
  }
  return 1;
}

cplx trace_product(const Matrix& at, const Matrix& w) {
  // trace(A W) = sum_ij A_ij W_ji = <vec(A^T), vec(W)> (unconjugated)
  return simd::cdotu(at.data(), w.data(), static_cast<std::size_t>(w.size()));
}

}  // namespace

double trustworthy_radius(int dim) { return std::sqrt(2.0 * dim); }

CharFunction::CharFunction(GridSpec grid, std::vector<cplx> values, int source_dim, double support_radius)
    : grid_(grid), values_(std::move(values)), source_dim_(source_dim), support_radius_(support_radius) {
  if (values_.size() != grid_.size()) throw std::invalid_argument("CharFunction: value count != grid size");
  if (source_dim_ < 1) throw std::invalid_argument("CharFunction: source_dim must be >= 1");
  if (!(support_radius_ >= 0.0)) throw std::invalid_argument("CharFunction: bad support radius");
  for (const cplx& v : values_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw std::invalid_argument("CharFunction: non-finite value");
    }
  }
}

cplx char_value(const FockOperator& a, PhasePoint z) {
  require_window(z.norm(), a.dim());
  const Matrix at = a.matrix().transpose();
  return trace_product(at, weyl_block(z, a.dim()).matrix());
}

CharFunction char_function(const FockOperator& a, const GridSpec& grid, double radius) {
  require_window(radius, a.dim());
  // trace((A (+) 0) W) only sees the block of W where A lives
  const int e = effective_dim(a.matrix());
  const Matrix at = a.matrix().topLeftCorner(e, e).transpose();
  const auto pts = disk_points(grid, radius);
  std::vector<cplx> values(grid.size());
  detail::parallel_chunks(pts.size(), 32, [&](std::size_t, std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      values[pts[i]] = trace_product(at, weyl_block(grid.point(pts[i]), e).matrix());
    }
  });
  return CharFunction(grid, std::move(values), a.dim(), radius);
}

CharFunction char_function(const FockOperator& a, const GridSpec& grid) {
  return char_function(a, grid, grid.max_radius());
}

namespace {

Matrix inverse_sum(const CharFunction& f, int dim, double constant) {
  const GridSpec& grid = f.grid();
  const double h2 = grid.spacing() * grid.spacing();
  std::vector<std::size_t> pts;
  for (std::size_t k : disk_points(grid, f.support_radius())) {
    if (f.values()[k] != cplx{}) pts.push_back(k);
  }
  const std::size_t chunk = std::max<std::size_t>(1, (pts.size() + kReductionChunks - 1) / kReductionChunks);
  const std::size_t chunks = (pts.size() + chunk - 1) / chunk;
  std::vector<Matrix> partial(chunks, Matrix::Zero(dim, dim));
  detail::parallel_chunks(pts.size(), chunk, [&](std::size_t c, std::size_t lo, std::size_t hi) {
    Matrix& acc = partial[c];
    for (std::size_t i = lo; i < hi; ++i) {
      const Matrix w = weyl_block(-grid.point(pts[i]), dim).matrix();
      simd::caxpy(f.values()[pts[i]] * h2, w.data(), acc.data(), static_cast<std::size_t>(w.size()));
    }
  });
  Matrix out = Matrix::Zero(dim, dim);
  for (const Matrix& p : partial) out += p;
  return constant * out;
}

}  // namespace

FockOperator inverse_transform(const CharFunction& f, int dim, const InverseOptions& opts) {
  if (dim < 1 || dim > f.source_dim()) {
    throw std::invalid_argument("inverse_transform: need 1 <= N <= source_dim");
  }
  if (opts.probe_check) {
    const FockOperator probe = number_state(0, dim).op();
    const CharFunction pf = char_function(probe.embedded(f.source_dim()), f.grid(), f.support_radius());
    const double err = trace_norm(FockOperator(inverse_sum(pf, dim, opts.constant)) - probe);
    if (err > opts.probe_tolerance) {
      throw GridError("inverse_transform: probe round-trip error " + std::to_string(err) +
                      " exceeds " + std::to_string(opts.probe_tolerance) + " (grid too coarse or too small)");
    }
  }
  return FockOperator(inverse_sum(f, dim, opts.constant));
}

double calibrate_inverse_constant(const GridSpec& grid, double radius, int dim) {
  const FockOperator probe = number_state(0, dim).op();
  const CharFunction pf = char_function(probe, grid, radius);
  const Matrix s = inverse_sum(pf, dim, 1.0);
  return (s.adjoint() * probe.matrix()).trace().real() / s.squaredNorm();
}

std::vector<double> riemann_lebesgue_profile(const FockOperator& a, const std::vector<double>& radii,
                                             int directions) {
  if (directions < 1) throw std::invalid_argument("riemann_lebesgue_profile: need >= 1 direction");
  for (double r : radii) {
    if (!(r >= 0.0)) throw std::invalid_argument("riemann_lebesgue_profile: negative radius");
    require_window(r, a.dim());
  }
  const Matrix at = a.matrix().transpose();
  std::vector<double> out(radii.size());
  detail::parallel_chunks(radii.size(), 1, [&](std::size_t, std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      double best = 0.0;
      for (int d = 0; d < directions; ++d) {
        const double th = 2.0 * std::numbers::pi * d / directions;
        const PhasePoint z{radii[i] * std::cos(th), radii[i] * std::sin(th)};
        best = std::max(best, std::abs(trace_product(at, weyl_block(z, a.dim()).matrix())));
      }
      out[i] = best;
    }
  });
  return out;
}

}  // namespace ccrheat
