// Built with -mavx2. Include nothing here that defines inline functions shared
// with other translation units, or those copies may carry AVX2 code.
#include <immintrin.h>

#include "grn/kernels/joint_counts.hpp"

namespace grn::kernels {
namespace {

// Per-64-bit-lane popcount: nibble lookup, then byte sums via SAD.
inline __m256i popcount_lanes(__m256i v) {
  const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                       0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low_mask = _mm256_set1_epi8(0x0f);
  const __m256i lo = _mm256_and_si256(v, low_mask);
  const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
  const __m256i bytes = _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo), _mm256_shuffle_epi8(lut, hi));
  return _mm256_sad_epu8(bytes, _mm256_setzero_si256());
}

// Low 32 bits of each 64-bit lane, packed into four u32.
inline __m128i narrow_lanes(__m256i v) {
  const __m256i idx = _mm256_setr_epi32(0, 2, 4, 6, 0, 0, 0, 0);
  return _mm256_castsi256_si128(_mm256_permutevar8x32_epi32(v, idx));
}

}  // namespace

void joint_counts_avx2(PlaneView x, PlaneView y, std::size_t stride, std::uint32_t* counts) {
  if (stride == 1) {
    // One word per plane: four y planes per vector against a broadcast x plane.
    for (std::size_t a = 0; a < x.bins; ++a) {
      const __m256i xa = _mm256_set1_epi64x(static_cast<long long>(x.words[a]));
      std::uint32_t* row = counts + a * y.bins_padded;
      for (std::size_t b = 0; b < y.bins_padded; b += kPlaneGroup) {
        const __m256i yb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(y.words + b));
        const __m256i c = popcount_lanes(_mm256_and_si256(xa, yb));
        _mm_storeu_si128(reinterpret_cast<__m128i*>(row + b), narrow_lanes(c));
      }
    }
    return;
  }

  // Multi-word planes: stride is a multiple of four, vectorize along words.
  for (std::size_t a = 0; a < x.bins; ++a) {
    const std::uint64_t* xa = x.words + a * stride;
    std::uint32_t* row = counts + a * y.bins_padded;
    for (std::size_t b = 0; b < y.bins_padded; ++b) {
      const std::uint64_t* yb = y.words + b * stride;
      __m256i acc = _mm256_setzero_si256();
      for (std::size_t w = 0; w < stride; w += kPlaneGroup) {
        const __m256i xv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(xa + w));
        const __m256i yv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(yb + w));
        acc = _mm256_add_epi64(acc, popcount_lanes(_mm256_and_si256(xv, yv)));
      }
      const __m128i pair = _mm_add_epi64(_mm256_castsi256_si128(acc), _mm256_extracti128_si256(acc, 1));
      const auto total = static_cast<std::uint64_t>(_mm_cvtsi128_si64(pair)) +
                         static_cast<std::uint64_t>(_mm_extract_epi64(pair, 1));
      row[b] = static_cast<std::uint32_t>(total);
    }
  }
}

}  // namespace grn::kernels
