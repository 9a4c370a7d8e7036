#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "grn/kernels/joint_counts.hpp"

namespace grn {

enum class LogBase { Two, E };

std::string_view log_base_name(LogBase base);

/// Equal-width discretization of one expression profile.
struct DiscretizedProfile {
  std::string gene_id;
  std::vector<std::uint32_t> bins;  // one index in [0, bin_count) per sample
  std::size_t bin_count = 1;        // effective B; 1 for a constant profile
  std::vector<double> bin_edges;    // bin_count + 1 ascending edges
  bool constant = false;

  std::size_t samples() const { return bins.size(); }
};

/// ceil(log2 M) + 1.
std::size_t sturges_bins(std::size_t samples);

/// Splits [min, max] into `bins` equal-width intervals; the maximum lands in
/// the top bin. A constant profile gets a single bin.
DiscretizedProfile discretize_equal_width(std::span<const double> profile, std::size_t bins,
                                          std::string gene_id = {});

/// Plug-in entropy of the histogram of `d`.
double entropy(const DiscretizedProfile& d, LogBase base = LogBase::Two);

/// Plug-in entropy of the 2-D histogram over bin pairs. Throws grn::Error on
/// a sample count mismatch.
double joint_entropy(const DiscretizedProfile& x, const DiscretizedProfile& y, LogBase base = LogBase::Two);

/// H(x) + H(y) - H(x, y); results in (-1e-12, 0) are clamped to 0.
double mutual_information(const DiscretizedProfile& x, const DiscretizedProfile& y, LogBase base = LogBase::Two);

/// Entropy of a histogram given by its non-zero cell counts summing to
/// `total`. Counts are summed in ascending order, so any permutation of the
/// same cells gives a bit-identical result.
double entropy_from_counts(std::span<std::uint32_t> nonzero_counts, std::size_t total, LogBase base);

struct MiPair {
  std::uint32_t i = 0;  // i < j, indices into the profile list
  std::uint32_t j = 0;
  double mi = 0;

  friend bool operator==(const MiPair&, const MiPair&) = default;
};

/// All unordered pairs, sorted by MI descending then (i, j) ascending.
struct MiPairList {
  std::vector<MiPair> entries;
  std::size_t genes = 0;

  std::size_t size() const { return entries.size(); }
};

struct AllPairsOptions {
  LogBase base = LogBase::Two;
  unsigned workers = 1;  // 0 = hardware concurrency
  kernels::Isa isa = kernels::active_isa();
};

/// MI for every unordered pair. Output is identical for any worker count and
/// any kernel variant. Throws grn::Error with fewer than two profiles or on
/// mismatched sample counts.
MiPairList all_pairs_mi(std::span<const DiscretizedProfile> profiles, const AllPairsOptions& options = {});

/// Pair count G(G-1)/2 and the flat index of pair (i, j), i < j.
inline std::size_t pair_count(std::size_t genes) { return genes < 2 ? 0 : genes * (genes - 1) / 2; }
inline std::size_t pair_index(std::size_t genes, std::size_t i, std::size_t j) {
  return i * (2 * genes - i - 1) / 2 + (j - i - 1);
}

}  // namespace grn
