#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "grn/expression_matrix.hpp"

namespace grn {

/// Synthetic two-class expression data with known structure.
///
/// Gene layout: the first `deg_count` genes are differentially expressed
/// (normal samples shifted up by `shift`), the next 2 * `pair_count` genes
/// form planted pairs y = x + noise * N(0, 1), and the rest are i.i.d. null
/// genes. Every value is `baseline` + N(0, 1) before the planted effects.
struct SynthSpec {
  std::size_t genes = 50;
  std::size_t tumor_samples = 12;
  std::size_t normal_samples = 8;
  std::size_t deg_count = 5;
  double shift = 4.0;
  std::size_t pair_count = 10;
  double noise = 0.1;
  double baseline = 8.0;
  std::uint64_t seed = 7;
};

struct SynthData {
  ExpressionMatrix matrix;
  std::vector<std::string> deg_genes;
  std::vector<std::pair<std::string, std::string>> planted_pairs;
};

/// Deterministic for a fixed spec. Throws grn::Error(Domain) when the
/// planted genes do not fit or a class has fewer than two samples.
SynthData generate_synthetic(const SynthSpec& spec);

/// Writes expression.tsv, labels.tsv and manifest.json into `dir`.
void write_synthetic(const SynthData& data, const SynthSpec& spec, const std::filesystem::path& dir);

}  // namespace grn
