#include <arm_neon.h>

#include "grn/kernels/joint_counts.hpp"

namespace grn::kernels {
namespace {

// Popcount of each 64-bit lane.
inline uint64x2_t popcount_lanes(uint64x2_t v) {
  const uint8x16_t bytes = vcntq_u8(vreinterpretq_u8_u64(v));
  return vpaddlq_u32(vpaddlq_u16(vpaddlq_u8(bytes)));
}

}  // namespace

void joint_counts_neon(PlaneView x, PlaneView y, std::size_t stride, std::uint32_t* counts) {
  if (stride == 1) {
    for (std::size_t a = 0; a < x.bins; ++a) {
      const uint64x2_t xa = vdupq_n_u64(x.words[a]);
      std::uint32_t* row = counts + a * y.bins_padded;
      for (std::size_t b = 0; b < y.bins_padded; b += 2) {
        const uint64x2_t c = popcount_lanes(vandq_u64(xa, vld1q_u64(y.words + b)));
        vst1_u32(row + b, vmovn_u64(c));
      }
    }
    return;
  }

  for (std::size_t a = 0; a < x.bins; ++a) {
    const std::uint64_t* xa = x.words + a * stride;
    std::uint32_t* row = counts + a * y.bins_padded;
    for (std::size_t b = 0; b < y.bins_padded; ++b) {
      const std::uint64_t* yb = y.words + b * stride;
      uint64x2_t acc = vdupq_n_u64(0);
      for (std::size_t w = 0; w < stride; w += 2) {
        acc = vaddq_u64(acc, popcount_lanes(vandq_u64(vld1q_u64(xa + w), vld1q_u64(yb + w))));
      }
      row[b] = static_cast<std::uint32_t>(vaddvq_u64(acc));
    }
  }
}

}  // namespace grn::kernels
