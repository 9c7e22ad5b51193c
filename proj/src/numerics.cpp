#include "numerics.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <string>

#include "ccrheat/simd/kernels.hpp"

namespace ccrheat::detail {

QuadratureRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: need at least one node");
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p2) / k;
      }
      dp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = mid - half * x;
    rule.nodes[n - 1 - i] = mid + half * x;
    rule.weights[i] = rule.weights[n - 1 - i] = half * w;
  }
  return rule;
}

std::vector<cplx> phase_sum(std::span<const cplx> w, const GridSpec& src, const GridSpec& dst) {
  const int m = src.points();
  const int md = dst.points();
  // exp(i omega(zeta, z)) = exp(i x zeta_y / 2) * exp(-i zeta_x y / 2)
  std::vector<cplx> ey(static_cast<std::size_t>(md) * m);
  std::vector<cplx> ex(static_cast<std::size_t>(md) * m);
  for (int b = 0; b < md; ++b) {
    for (int k = 0; k < m; ++k) {
      const cplx e = std::polar(1.0, -0.5 * dst.coord(b) * src.coord(k));
      ey[static_cast<std::size_t>(b) * m + k] = e;
      ex[static_cast<std::size_t>(b) * m + k] = std::conj(e);
    }
  }
  std::vector<bool> row_live(m, false);
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < m && !row_live[j]; ++k) row_live[j] = w[src.index(j, k)] != cplx{};
  }
  // t[b][j] = sum_k w[j][k] ey[b][k]
  std::vector<cplx> t(static_cast<std::size_t>(md) * m);
  for (int b = 0; b < md; ++b) {
    for (int j = 0; j < m; ++j) {
      if (!row_live[j]) continue;
      t[static_cast<std::size_t>(b) * m + j] =
          simd::cdotu(&w[src.index(j, 0)], &ey[static_cast<std::size_t>(b) * m], m);
    }
  }
  // out[b][a] = sum_j ex[a][j] t[b][j]
  std::vector<cplx> out(static_cast<std::size_t>(md) * md);
  parallel_chunks(static_cast<std::size_t>(md), 8, [&](std::size_t, std::size_t lo, std::size_t hi) {
    for (std::size_t b = lo; b < hi; ++b) {
      for (int a = 0; a < md; ++a) {
        out[b * md + a] = simd::cdotu(&ex[static_cast<std::size_t>(a) * m], &t[b * m], m);
      }
    }
  });
  return out;
}

std::size_t worker_count() {
  static const std::size_t count = [] {
    if (const char* env = std::getenv("CCRHEAT_THREADS")) {
      const long v = std::strtol(env, nullptr, 10);
      if (v >= 1) return static_cast<std::size_t>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return static_cast<std::size_t>(hw == 0 ? 1 : hw);
  }();
  return count;
}

}  // namespace ccrheat::detail
