// AArch64 only; NEON is part of the base ISA there.
#include <arm_neon.h>

#include <cmath>

#include "ccrheat/simd/kernels.hpp"

namespace ccrheat::simd::detail {
namespace {

// One complex double per float64x2_t: [re, im].
inline float64x2_t load1(const cplx* p) { return vld1q_f64(reinterpret_cast<const double*>(p)); }
inline void store1(cplx* p, float64x2_t v) { vst1q_f64(reinterpret_cast<double*>(p), v); }
inline float64x2_t swap_re_im(float64x2_t v) { return vextq_f64(v, v, 1); }

void caxpy_neon(cplx a, const cplx* x, cplx* y, std::size_t n) {
  const float64x2_t ar = vdupq_n_f64(a.real());
  // [-ai, ai] so that ai_signed * [xi, xr] = [-ai*xi, ai*xr]
  const double ai_lanes[2] = {-a.imag(), a.imag()};
  const float64x2_t ai = vld1q_f64(ai_lanes);
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t xv = load1(x + i);
    float64x2_t yv = vfmaq_f64(load1(y + i), ar, xv);
    yv = vfmaq_f64(yv, ai, swap_re_im(xv));
    store1(y + i, yv);
  }
}

cplx cdotu_neon(const cplx* x, const cplx* y, std::size_t n) {
  float64x2_t same = vdupq_n_f64(0.0);
  float64x2_t cross = vdupq_n_f64(0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t xv = load1(x + i);
    const float64x2_t yv = load1(y + i);
    same = vfmaq_f64(same, xv, yv);
    cross = vfmaq_f64(cross, xv, swap_re_im(yv));
  }
  return {vgetq_lane_f64(same, 0) - vgetq_lane_f64(same, 1),
          vgetq_lane_f64(cross, 0) + vgetq_lane_f64(cross, 1)};
}

double abs_sum_neon(const cplx* x, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t a = load1(x + i);
    const float64x2_t b = load1(x + i + 1);
    acc = vaddq_f64(acc, vsqrtq_f64(vpaddq_f64(vmulq_f64(a, a), vmulq_f64(b, b))));
  }
  double total = vaddvq_f64(acc);
  for (; i < n; ++i) total += std::abs(x[i]);
  return total;
}

double abs_diff_sum_neon(const cplx* x, const cplx* y, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t a = vsubq_f64(load1(x + i), load1(y + i));
    const float64x2_t b = vsubq_f64(load1(x + i + 1), load1(y + i + 1));
    acc = vaddq_f64(acc, vsqrtq_f64(vpaddq_f64(vmulq_f64(a, a), vmulq_f64(b, b))));
  }
  double total = vaddvq_f64(acc);
  for (; i < n; ++i) total += std::abs(x[i] - y[i]);
  return total;
}

}  // namespace

const KernelTable neon_table{"neon", caxpy_neon, cdotu_neon, abs_sum_neon, abs_diff_sum_neon};

}  // namespace ccrheat::simd::detail
