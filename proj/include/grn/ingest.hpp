#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "grn/expression_matrix.hpp"

namespace grn {

/// Sample id -> class name, in file order.
using LabelTable = std::vector<std::pair<std::string, std::string>>;

/// Reads a header-less two-column `sample_id<TAB>class` file.
LabelTable read_labels(const std::filesystem::path& path);

/// Decides which label plays the tumor role. An explicit pair wins; otherwise
/// a {tumor, normal} label set (any case) maps literally, and anything else
/// takes the first class seen in the file as tumor.
ClassNames resolve_class_names(const LabelTable& labels,
                               const std::optional<std::pair<std::string, std::string>>& explicit_names = {});

/// Attaches labels to a raw matrix. Every sample must be labelled, exactly two
/// classes must appear, and each class needs at least two samples.
ExpressionMatrix attach_labels(RawMatrix raw, const LabelTable& labels,
                               const std::optional<std::pair<std::string, std::string>>& explicit_names = {});

/// Tab-separated matrix: header `gene_id<TAB>s1...`, one gene per line.
/// Empty, NA and NaN cells become missing.
RawMatrix read_tsv_matrix(std::istream& in);
RawMatrix read_tsv_matrix(const std::filesystem::path& path);

ExpressionMatrix parse_tsv(const std::filesystem::path& path, const std::filesystem::path& label_path);

/// GEO series-matrix text. Metadata lines start with '!'; the expression block
/// sits between `!series_matrix_table_begin` and `!series_matrix_table_end`.
/// Quotes around ids are stripped. Labels are attached separately.
RawMatrix parse_series_matrix(std::istream& in);
RawMatrix parse_series_matrix(const std::filesystem::path& path);

/// Writes the matrix in the format read by read_tsv_matrix. Values use the
/// shortest round-trip representation; missing cells are written as NA.
void write_tsv_matrix(std::ostream& out, const ExpressionMatrix& m);
void write_labels(std::ostream& out, const ExpressionMatrix& m);

// ---------------------------------------------------------------------------
// Preprocessing

enum class Normalization { None, ZScore };

struct NormalizationSpec {
  bool log2_transform = false;
  Normalization method = Normalization::ZScore;
  double missing_drop_fraction = 0.5;  // drop a gene when missing share > this
};

struct PreprocessReport {
  std::vector<std::string> dropped_unnamed;
  std::vector<std::string> dropped_missing;
  std::vector<std::string> dropped_zero_variance;
  std::size_t imputed_cells = 0;
};

struct Preprocessed {
  ExpressionMatrix matrix;
  PreprocessReport report;
};

/// Gene ids treated as "no name": empty, NA, N/A, null, ---.
bool is_placeholder_gene_id(const std::string& id);

/// Drops unnamed and mostly-missing genes, imputes the rest with the
/// within-class gene mean, then applies the optional log2(x+1) and per-gene
/// z-score. The result contains no missing values.
Preprocessed preprocess(const ExpressionMatrix& m, const NormalizationSpec& spec);

// ---------------------------------------------------------------------------
// Per-sample summary for plotting expression profiles by class.

struct SampleSummaryRow {
  std::string sample_id;
  std::string class_name;
  double mean = 0;
  double median = 0;
  double stddev = 0;  // sample (n-1) standard deviation
  double min = 0;
  double max = 0;
};

std::vector<SampleSummaryRow> sample_summary(const ExpressionMatrix& m);
void write_sample_summary(std::ostream& out, const std::vector<SampleSummaryRow>& rows);

}  // namespace grn
