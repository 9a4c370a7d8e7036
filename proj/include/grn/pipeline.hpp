#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "grn/degfilter.hpp"
#include "grn/ingest.hpp"
#include "grn/mi.hpp"
#include "grn/network.hpp"

namespace grn {

enum class InputFormat { Tsv, SeriesMatrix };

/// Export kinds accepted by --emit.
inline const std::set<std::string>& known_exports() {
  static const std::set<std::string> kinds{"edgelist", "graphml", "dot", "json", "mi-matrix", "deg-report", "summary"};
  return kinds;
}

struct RunConfig {
  std::filesystem::path input;
  InputFormat format = InputFormat::Tsv;
  std::filesystem::path labels;
  std::optional<std::pair<std::string, std::string>> classes;  // tumor, normal
  double alpha = 0.01;
  std::vector<std::size_t> ks{30};
  std::optional<double> min_mi;  // threshold selection instead of top-K
  std::size_t bins = 0;          // 0 = Sturges
  LogBase log_base = LogBase::Two;
  NormalizationSpec normalization;
  std::size_t hubs = 5;
  std::filesystem::path out_dir = "grn_out";
  std::set<std::string> emit{"edgelist", "json"};
  unsigned workers = 0;
};

/// Throws grn::Error(Domain) for out-of-range settings.
void validate(const RunConfig& config);

struct InferenceResult {
  std::size_t genes_in = 0;
  ExpressionMatrix preprocessed;
  PreprocessReport preprocess_report;
  DegSelection selection;
  std::size_t bins = 0;
  std::vector<DiscretizedProfile> profiles;
  MiPairList pairs;
  std::vector<SweepEntry> networks;
  bool threshold_mode = false;
};

/// File-name tag of one network: "k30", or "threshold" in --min-mi mode.
std::string network_tag(const InferenceResult& result, const SweepEntry& entry);

/// Runs every stage in memory; nothing is written. Stage failures surface as
/// grn::Error with a stage prefix in the message.
InferenceResult run_inference(const RunConfig& config);

/// Writes the requested exports into config.out_dir. Byte content depends
/// only on the inputs and result-affecting settings, never on worker count.
void write_artifacts(const InferenceResult& result, const RunConfig& config);

/// One-line human summary: genes in, significant genes, pairs, edges, top hub.
std::string summary_line(const InferenceResult& result);

/// The JSON report as text (run metadata, counts, hubs, components).
std::string json_report(const InferenceResult& result, const RunConfig& config);

}  // namespace grn
