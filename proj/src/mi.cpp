#include "grn/mi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "grn/error.hpp"
#include "grn/parallel.hpp"

namespace grn {
namespace {

// -p log p for p = count / total. Shared by every entropy path so that the
// pairwise table and the one-off functions round identically.
inline double entropy_term(std::uint32_t count, std::size_t total, LogBase base) {
  if (count == 0) return 0.0;
  const double p = static_cast<double>(count) / static_cast<double>(total);
  return base == LogBase::Two ? -p * std::log2(p) : -p * std::log(p);
}

inline double clamp_mi(double mi) { return (mi < 0.0 && mi > -1e-12) ? 0.0 : mi; }

void check_profile(const DiscretizedProfile& d) {
  for (auto b : d.bins) {
    if (b >= d.bin_count) throw Error(ErrorKind::Domain, "bin index out of range in profile '" + d.gene_id + "'");
  }
}

void check_same_length(const DiscretizedProfile& x, const DiscretizedProfile& y) {
  if (x.samples() != y.samples()) {
    throw Error(ErrorKind::Domain, "profiles '" + x.gene_id + "' and '" + y.gene_id + "' differ in sample count (" +
                                       std::to_string(x.samples()) + " vs " + std::to_string(y.samples()) + ")");
  }
}

// Bit-plane encoding of a whole profile list, one contiguous buffer.
struct PlaneSet {
  std::size_t stride = 1;
  std::vector<std::uint64_t> words;
  std::vector<std::size_t> offsets;
  std::vector<std::size_t> bins;

  explicit PlaneSet(std::span<const DiscretizedProfile> profiles) {
    const std::size_t samples = profiles.front().samples();
    stride = kernels::plane_stride(samples);
    std::size_t total = 0;
    for (const auto& p : profiles) {
      offsets.push_back(total);
      bins.push_back(p.bin_count);
      total += kernels::padded_bins(p.bin_count) * stride;
    }
    words.assign(total, 0);
    for (std::size_t g = 0; g < profiles.size(); ++g) {
      std::uint64_t* base = words.data() + offsets[g];
      const auto& p = profiles[g];
      for (std::size_t s = 0; s < samples; ++s) {
        base[p.bins[s] * stride + s / 64] |= std::uint64_t{1} << (s % 64);
      }
    }
  }

  kernels::PlaneView view(std::size_t g) const {
    return {words.data() + offsets[g], bins[g], kernels::padded_bins(bins[g])};
  }
};

}  // namespace

std::string_view log_base_name(LogBase base) { return base == LogBase::Two ? "2" : "e"; }

std::size_t sturges_bins(std::size_t samples) {
  if (samples <= 1) return 1;
  return static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(samples)))) + 1;
}

DiscretizedProfile discretize_equal_width(std::span<const double> profile, std::size_t bins, std::string gene_id) {
  if (bins == 0) throw Error(ErrorKind::Domain, "bin count must be at least 1");
  if (profile.empty()) throw Error(ErrorKind::Domain, "cannot discretize an empty profile");
  for (double v : profile) {
    if (!std::isfinite(v)) throw Error(ErrorKind::Domain, "profile '" + gene_id + "' has a non-finite value");
  }
  DiscretizedProfile d;
  d.gene_id = std::move(gene_id);
  const auto [lo_it, hi_it] = std::minmax_element(profile.begin(), profile.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  d.bins.assign(profile.size(), 0);
  if (hi == lo) {
    d.bin_count = 1;
    d.constant = true;
    d.bin_edges = {lo, hi};
    return d;
  }
  d.bin_count = bins;
  const double range = hi - lo;
  const double scale = static_cast<double>(bins) / range;
  for (std::size_t s = 0; s < profile.size(); ++s) {
    const double pos = (profile[s] - lo) * scale;
    auto idx = static_cast<std::size_t>(pos);
    d.bins[s] = static_cast<std::uint32_t>(std::min(idx, bins - 1));
  }
  d.bin_edges.resize(bins + 1);
  for (std::size_t k = 0; k < bins; ++k) d.bin_edges[k] = lo + range * static_cast<double>(k) / static_cast<double>(bins);
  d.bin_edges[bins] = hi;
  return d;
}

double entropy_from_counts(std::span<std::uint32_t> nonzero_counts, std::size_t total, LogBase base) {
  std::sort(nonzero_counts.begin(), nonzero_counts.end());
  double h = 0.0;
  for (auto c : nonzero_counts) h += entropy_term(c, total, base);
  return h;
}

double entropy(const DiscretizedProfile& d, LogBase base) {
  check_profile(d);
  std::vector<std::uint32_t> counts(d.bin_count, 0);
  for (auto b : d.bins) ++counts[b];
  std::erase(counts, 0u);
  return entropy_from_counts(counts, d.samples(), base);
}

double joint_entropy(const DiscretizedProfile& x, const DiscretizedProfile& y, LogBase base) {
  check_same_length(x, y);
  check_profile(x);
  check_profile(y);
  std::vector<std::uint32_t> cells(x.bin_count * y.bin_count, 0);
  for (std::size_t s = 0; s < x.samples(); ++s) ++cells[x.bins[s] * y.bin_count + y.bins[s]];
  std::erase(cells, 0u);
  return entropy_from_counts(cells, x.samples(), base);
}

double mutual_information(const DiscretizedProfile& x, const DiscretizedProfile& y, LogBase base) {
  const double hxy = joint_entropy(x, y, base);
  return clamp_mi(entropy(x, base) + entropy(y, base) - hxy);
}

MiPairList all_pairs_mi(std::span<const DiscretizedProfile> profiles, const AllPairsOptions& options) {
  const std::size_t genes = profiles.size();
  if (genes < 2) throw Error(ErrorKind::Domain, "all-pairs MI needs at least 2 profiles, got " + std::to_string(genes));
  if (genes > std::numeric_limits<std::uint32_t>::max()) throw Error(ErrorKind::Domain, "too many profiles");
  const std::size_t samples = profiles.front().samples();
  std::vector<double> h(genes);
  std::size_t max_bins = 1;
  for (std::size_t g = 0; g < genes; ++g) {
    check_same_length(profiles.front(), profiles[g]);
    h[g] = entropy(profiles[g], options.base);
    max_bins = std::max(max_bins, profiles[g].bin_count);
  }

  const PlaneSet planes(profiles);
  const auto kernel = kernels::joint_count_kernel(options.isa);
  std::vector<double> term(samples + 1);
  for (std::size_t c = 0; c <= samples; ++c) term[c] = entropy_term(static_cast<std::uint32_t>(c), samples, options.base);

  MiPairList out;
  out.genes = genes;
  out.entries.resize(pair_count(genes));

  parallel_for_chunks(out.entries.size(), options.workers, [&](std::size_t begin, std::size_t end) {
    std::vector<std::uint32_t> counts(max_bins * kernels::padded_bins(max_bins));
    std::vector<std::uint32_t> nonzero;
    nonzero.reserve(counts.size());

    std::size_t i = 0;
    while (pair_index(genes, i, genes - 1) < begin) ++i;
    std::size_t j = begin - pair_index(genes, i, i + 1) + i + 1;

    for (std::size_t k = begin; k < end; ++k) {
      const auto x = planes.view(i);
      const auto y = planes.view(j);
      kernel(x, y, planes.stride, counts.data());
      nonzero.clear();
      for (std::size_t a = 0; a < x.bins; ++a) {
        for (std::size_t b = 0; b < y.bins; ++b) {
          const auto c = counts[a * y.bins_padded + b];
          if (c != 0) nonzero.push_back(c);
        }
      }
      std::sort(nonzero.begin(), nonzero.end());
      double hxy = 0.0;
      for (auto c : nonzero) hxy += term[c];
      out.entries[k] = {static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), clamp_mi(h[i] + h[j] - hxy)};
      if (++j == genes) {
        ++i;
        j = i + 1;
      }
    }
  });

  std::sort(out.entries.begin(), out.entries.end(), [](const MiPair& a, const MiPair& b) {
    if (a.mi != b.mi) return a.mi > b.mi;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  });
  return out;
}

}  // namespace grn
