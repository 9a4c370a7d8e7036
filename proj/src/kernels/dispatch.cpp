#include <cstdlib>
#include <string>

#include "grn/kernels/joint_counts.hpp"

namespace grn::kernels {

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
    case Isa::Neon:
      return "neon";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(GRN_HAVE_AVX2_KERNEL)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(GRN_HAVE_NEON_KERNEL)
      return true;  // NEON is mandatory on AArch64
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() {
  static const Isa chosen = [] {
    if (const char* env = std::getenv("GRN_SIMD")) {
      const std::string want(env);
      for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon}) {
        if (want == isa_name(isa) && isa_available(isa)) return isa;
      }
    }
    if (isa_available(Isa::Avx2)) return Isa::Avx2;
    if (isa_available(Isa::Neon)) return Isa::Neon;
    return Isa::Scalar;
  }();
  return chosen;
}

JointCountFn joint_count_kernel(Isa isa) {
  if (!isa_available(isa)) return &joint_counts_scalar;
  switch (isa) {
#if defined(GRN_HAVE_AVX2_KERNEL)
    case Isa::Avx2:
      return &joint_counts_avx2;
#endif
#if defined(GRN_HAVE_NEON_KERNEL)
    case Isa::Neon:
      return &joint_counts_neon;
#endif
    default:
      return &joint_counts_scalar;
  }
}

}  // namespace grn::kernels
