#include "ccrheat/simd/kernels.hpp"

namespace ccrheat::simd::detail {
namespace {

void caxpy_scalar(cplx a, const cplx* x, cplx* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

cplx cdotu_scalar(const cplx* x, const cplx* y, std::size_t n) {
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

double abs_sum_scalar(const cplx* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::abs(x[i]);
  return acc;
}

double abs_diff_sum_scalar(const cplx* x, const cplx* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::abs(x[i] - y[i]);
  return acc;
}

}  // namespace

const KernelTable scalar_table{"scalar", caxpy_scalar, cdotu_scalar, abs_sum_scalar,
                               abs_diff_sum_scalar};

}  // namespace ccrheat::simd::detail
