// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include <immintrin.h>

#include <cmath>

#include "ccrheat/simd/kernels.hpp"

namespace ccrheat::simd::detail {
namespace {

// Two complex doubles per __m256d: [re0, im0, re1, im1].
inline __m256d load2(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store2(cplx* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }
inline __m256d swap_re_im(__m256d v) { return _mm256_permute_pd(v, 0b0101); }

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

void caxpy_avx2(cplx a, const cplx* x, cplx* y, std::size_t n) {
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = load2(x + i);
    // even lanes: ar*xr - ai*xi, odd lanes: ar*xi + ai*xr
    const __m256d prod = _mm256_fmaddsub_pd(ar, xv, _mm256_mul_pd(ai, swap_re_im(xv)));
    store2(y + i, _mm256_add_pd(load2(y + i), prod));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

cplx cdotu_avx2(const cplx* x, const cplx* y, std::size_t n) {
  __m256d same = _mm256_setzero_pd();   // [xr*yr, xi*yi, ...]
  __m256d cross = _mm256_setzero_pd();  // [xr*yi, xi*yr, ...]
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = load2(x + i);
    const __m256d yv = load2(y + i);
    same = _mm256_fmadd_pd(xv, yv, same);
    cross = _mm256_fmadd_pd(xv, swap_re_im(yv), cross);
  }
  alignas(32) double s[4];
  alignas(32) double c[4];
  _mm256_store_pd(s, same);
  _mm256_store_pd(c, cross);
  cplx acc{(s[0] + s[2]) - (s[1] + s[3]), (c[0] + c[2]) + (c[1] + c[3])};
  for (; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

// |z| for the four complex values held in a and b, as [|a0|, |b0|, |a1|, |b1|].
inline __m256d moduli4(__m256d a, __m256d b) {
  return _mm256_sqrt_pd(_mm256_hadd_pd(_mm256_mul_pd(a, a), _mm256_mul_pd(b, b)));
}

double abs_sum_avx2(const cplx* x, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, moduli4(load2(x + i), load2(x + i + 2)));
  double total = hsum(acc);
  for (; i < n; ++i) total += std::abs(x[i]);
  return total;
}

double abs_diff_sum_avx2(const cplx* x, const cplx* y, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d0 = _mm256_sub_pd(load2(x + i), load2(y + i));
    const __m256d d1 = _mm256_sub_pd(load2(x + i + 2), load2(y + i + 2));
    acc = _mm256_add_pd(acc, moduli4(d0, d1));
  }
  double total = hsum(acc);
  for (; i < n; ++i) total += std::abs(x[i] - y[i]);
  return total;
}

}  // namespace

const KernelTable avx2_table{"avx2", caxpy_avx2, cdotu_avx2, abs_sum_avx2, abs_diff_sum_avx2};

}  // namespace ccrheat::simd::detail
