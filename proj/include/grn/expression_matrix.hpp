#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace grn {

/// Sentinel for an absent measurement. Any NaN cell is treated as missing.
inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

inline bool is_missing(double v) { return std::isnan(v); }

/// Class membership of one sample. `Tumor` is the first configured class,
/// `Normal` the second; the names themselves live in ClassNames.
enum class SampleClass : unsigned char { Tumor = 0, Normal = 1 };

struct ClassNames {
  std::string tumor = "tumor";
  std::string normal = "normal";

  const std::string& name(SampleClass c) const { return c == SampleClass::Tumor ? tumor : normal; }
};

/// Genes x samples matrix without class labels, as read from disk.
struct RawMatrix {
  std::vector<std::string> gene_ids;
  std::vector<std::string> sample_ids;
  std::vector<double> values;  // row-major, gene_ids.size() x sample_ids.size()

  std::size_t genes() const { return gene_ids.size(); }
  std::size_t samples() const { return sample_ids.size(); }
};

/// Genes x samples expression matrix with two-class sample labels.
///
/// Values are stored row-major so a gene profile is a contiguous span.
/// Gene ids may repeat until the DEG stage resolves duplicates.
class ExpressionMatrix {
 public:
  ExpressionMatrix() = default;

  /// Validates shape, sample id uniqueness and that both classes are present.
  /// Throws grn::Error on violation.
  ExpressionMatrix(std::vector<std::string> gene_ids, std::vector<std::string> sample_ids,
                   std::vector<double> values, std::vector<SampleClass> labels,
                   ClassNames class_names = {});

  std::size_t genes() const { return gene_ids_.size(); }
  std::size_t samples() const { return sample_ids_.size(); }

  const std::vector<std::string>& gene_ids() const { return gene_ids_; }
  const std::vector<std::string>& sample_ids() const { return sample_ids_; }
  const std::vector<SampleClass>& labels() const { return labels_; }
  const ClassNames& class_names() const { return class_names_; }
  const std::vector<double>& values() const { return values_; }

  std::span<const double> row(std::size_t gene) const {
    return {values_.data() + gene * samples(), samples()};
  }

  double at(std::size_t gene, std::size_t sample) const { return values_[gene * samples() + sample]; }

  std::size_t class_size(SampleClass c) const;
  bool has_missing() const;

  /// New matrix holding only the given rows, in the given order.
  ExpressionMatrix select_rows(std::span<const std::size_t> rows) const;

 private:
  std::vector<std::string> gene_ids_;
  std::vector<std::string> sample_ids_;
  std::vector<double> values_;
  std::vector<SampleClass> labels_;
  ClassNames class_names_;
};

}  // namespace grn
