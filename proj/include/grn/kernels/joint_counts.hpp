#pragma once

// Joint-histogram counting over bit-plane encoded profiles.
//
// A discretized profile with B bins over M samples is stored as B bit masks
// ("planes"), one bit per sample: bit s of plane b is set iff sample s fell
// into bin b. The joint count of cell (a, b) for profiles x and y is then
// popcount(x_plane[a] & y_plane[b]) summed over the plane words.
//
// Every kernel variant produces integer counts, so all variants must agree
// exactly; the scalar kernel is the reference.

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace grn::kernels {

/// Plane words are padded so SIMD loads never straddle a profile: a plane is
/// either one word or a multiple of four words, and the plane count of each
/// profile is rounded up to a multiple of four with all-zero planes.
inline constexpr std::size_t kPlaneGroup = 4;

inline std::size_t plane_stride(std::size_t samples) {
  const std::size_t words = (samples + 63) / 64;
  if (words <= 1) return 1;
  return (words + kPlaneGroup - 1) / kPlaneGroup * kPlaneGroup;
}

inline std::size_t padded_bins(std::size_t bins) { return (bins + kPlaneGroup - 1) / kPlaneGroup * kPlaneGroup; }

struct PlaneView {
  const std::uint64_t* words = nullptr;  // bins_padded * stride words
  std::size_t bins = 0;                  // live planes
  std::size_t bins_padded = 0;           // padded_bins(bins)
};

/// Writes counts[a * y.bins_padded + b] for a < x.bins and b < y.bins_padded.
/// Entries for padded y planes come out zero.
using JointCountFn = void (*)(PlaneView x, PlaneView y, std::size_t stride, std::uint32_t* counts);

void joint_counts_scalar(PlaneView x, PlaneView y, std::size_t stride, std::uint32_t* counts);
#if defined(GRN_HAVE_AVX2_KERNEL)
void joint_counts_avx2(PlaneView x, PlaneView y, std::size_t stride, std::uint32_t* counts);
#endif
#if defined(GRN_HAVE_NEON_KERNEL)
void joint_counts_neon(PlaneView x, PlaneView y, std::size_t stride, std::uint32_t* counts);
#endif

enum class Isa { Scalar, Avx2, Neon };

std::string_view isa_name(Isa isa);

/// True when the variant was compiled in and the running CPU supports it.
bool isa_available(Isa isa);

/// Best available variant, unless GRN_SIMD=scalar|avx2|neon names an
/// available one.
Isa active_isa();

JointCountFn joint_count_kernel(Isa isa);

}  // namespace grn::kernels
