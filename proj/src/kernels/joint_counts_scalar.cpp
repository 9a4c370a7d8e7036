#include <bit>

#include "grn/kernels/joint_counts.hpp"

namespace grn::kernels {

void joint_counts_scalar(PlaneView x, PlaneView y, std::size_t stride, std::uint32_t* counts) {
  for (std::size_t a = 0; a < x.bins; ++a) {
    const std::uint64_t* xa = x.words + a * stride;
    std::uint32_t* row = counts + a * y.bins_padded;
    for (std::size_t b = 0; b < y.bins_padded; ++b) {
      const std::uint64_t* yb = y.words + b * stride;
      std::uint32_t c = 0;
      for (std::size_t w = 0; w < stride; ++w) c += static_cast<std::uint32_t>(std::popcount(xa[w] & yb[w]));
      row[b] = c;
    }
  }
}

}  // namespace grn::kernels
