#pragma once
// Data-parallel inner loops shared by the phase-space and Fock-space code.
//
// Every kernel has a scalar reference implementation and, where the target
// supports it, an AVX2+FMA (x86-64) or NEON (AArch64) variant. The variant is
// selected once at runtime from CPU feature detection; setting the
// environment variable CCRHEAT_SIMD=scalar forces the reference path.

#include <complex>
#include <cstddef>
#include <string_view>

namespace ccrheat::simd {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2, neon };

struct KernelTable {
  std::string_view name;
  // y[i] += a * x[i]
  void (*caxpy)(cplx a, const cplx* x, cplx* y, std::size_t n);
  // sum_i x[i] * y[i]  (no conjugation)
  cplx (*cdotu)(const cplx* x, const cplx* y, std::size_t n);
  // sum_i |x[i]|
  double (*abs_sum)(const cplx* x, std::size_t n);
  // sum_i |x[i] - y[i]|
  double (*abs_diff_sum)(const cplx* x, const cplx* y, std::size_t n);
};

bool isa_supported(Isa isa) noexcept;

// Throws std::invalid_argument if the ISA is not available on this machine.
const KernelTable& kernels_for(Isa isa);

// The table picked at first use (best supported ISA unless overridden).
const KernelTable& kernels();
Isa active_isa();

std::string_view isa_name(Isa isa) noexcept;

// Convenience wrappers over the active table.
inline void caxpy(cplx a, const cplx* x, cplx* y, std::size_t n) { kernels().caxpy(a, x, y, n); }
inline cplx cdotu(const cplx* x, const cplx* y, std::size_t n) { return kernels().cdotu(x, y, n); }
inline double abs_sum(const cplx* x, std::size_t n) { return kernels().abs_sum(x, n); }
inline double abs_diff_sum(const cplx* x, const cplx* y, std::size_t n) {
  return kernels().abs_diff_sum(x, y, n);
}

namespace detail {
extern const KernelTable scalar_table;
#if defined(CCRHEAT_HAVE_AVX2)
extern const KernelTable avx2_table;
#endif
#if defined(CCRHEAT_HAVE_NEON)
extern const KernelTable neon_table;
#endif
}  // namespace detail

}  // namespace ccrheat::simd
