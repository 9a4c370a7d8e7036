#include "grn/expression_matrix.hpp"

#include <algorithm>
#include <unordered_set>

#include "grn/error.hpp"

namespace grn {

ExpressionMatrix::ExpressionMatrix(std::vector<std::string> gene_ids, std::vector<std::string> sample_ids,
                                   std::vector<double> values, std::vector<SampleClass> labels,
                                   ClassNames class_names)
    : gene_ids_(std::move(gene_ids)),
      sample_ids_(std::move(sample_ids)),
      values_(std::move(values)),
      labels_(std::move(labels)),
      class_names_(std::move(class_names)) {
  if (values_.size() != gene_ids_.size() * sample_ids_.size()) {
    throw Error(ErrorKind::Parse, "matrix has " + std::to_string(values_.size()) + " cells, expected " +
                                      std::to_string(gene_ids_.size()) + " x " +
                                      std::to_string(sample_ids_.size()));
  }
  if (labels_.size() != sample_ids_.size()) {
    throw Error(ErrorKind::Label, "label count does not match sample count");
  }
  std::unordered_set<std::string> seen;
  for (const auto& id : sample_ids_) {
    if (!seen.insert(id).second) throw Error(ErrorKind::Parse, "duplicate sample id '" + id + "'");
  }
  if (class_size(SampleClass::Tumor) == 0 || class_size(SampleClass::Normal) == 0) {
    throw Error(ErrorKind::Label, "both classes must contain at least one sample");
  }
  if (class_names_.tumor == class_names_.normal) {
    throw Error(ErrorKind::Label, "class names must differ");
  }
}

std::size_t ExpressionMatrix::class_size(SampleClass c) const {
  return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), c));
}

bool ExpressionMatrix::has_missing() const {
  return std::any_of(values_.begin(), values_.end(), [](double v) { return is_missing(v); });
}

ExpressionMatrix ExpressionMatrix::select_rows(std::span<const std::size_t> rows) const {
  std::vector<std::string> ids;
  std::vector<double> vals;
  ids.reserve(rows.size());
  vals.reserve(rows.size() * samples());
  for (std::size_t r : rows) {
    ids.push_back(gene_ids_[r]);
    auto src = row(r);
    vals.insert(vals.end(), src.begin(), src.end());
  }
  return ExpressionMatrix(std::move(ids), sample_ids_, std::move(vals), labels_, class_names_);
}

}  // namespace grn
