#include <cstdlib>
#include <stdexcept>
#include <string>

#include "ccrheat/simd/kernels.hpp"

namespace ccrheat::simd {
namespace {

Isa best_isa() noexcept {
  if (isa_supported(Isa::avx2)) return Isa::avx2;
  if (isa_supported(Isa::neon)) return Isa::neon;
  return Isa::scalar;
}

Isa select_isa() {
  if (const char* env = std::getenv("CCRHEAT_SIMD")) {
    const std::string_view want{env};
    for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
      if (want == isa_name(isa) && isa_supported(isa)) return isa;
    }
  }
  return best_isa();
}

}  // namespace

bool isa_supported(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(CCRHEAT_HAVE_AVX2)
      __builtin_cpu_init();
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::neon:
#if defined(CCRHEAT_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "unknown";
}

const KernelTable& kernels_for(Isa isa) {
  if (!isa_supported(isa)) {
    throw std::invalid_argument("SIMD variant not available: " + std::string(isa_name(isa)));
  }
  switch (isa) {
#if defined(CCRHEAT_HAVE_AVX2)
    case Isa::avx2: return detail::avx2_table;
#endif
#if defined(CCRHEAT_HAVE_NEON)
    case Isa::neon: return detail::neon_table;
#endif
    default: return detail::scalar_table;
  }
}

Isa active_isa() {
  static const Isa isa = select_isa();
  return isa;
}

const KernelTable& kernels() {
  static const KernelTable& table = kernels_for(active_isa());
  return table;
}

}  // namespace ccrheat::simd
