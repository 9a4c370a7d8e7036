#include "grn/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "grn/error.hpp"
#include "grn/export.hpp"
#include "grn/format.hpp"
#include "json.hpp"

namespace grn {
namespace {

template <typename Fn>
auto stage(const char* name, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    throw Error(e.kind(), std::string(name) + ": " + e.what());
  }
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw Error(ErrorKind::Io, "failed writing '" + path.string() + "'");
}

template <typename Writer>
std::string render(Writer&& writer) {
  std::ostringstream out;
  writer(out);
  return out.str();
}

}  // namespace

void validate(const RunConfig& config) {
  if (!(config.alpha > 0 && config.alpha < 1)) throw Error(ErrorKind::Domain, "alpha must lie in (0, 1)");
  if (!config.min_mi) {
    if (config.ks.empty()) throw Error(ErrorKind::Domain, "at least one --top-k value is required");
    for (auto k : config.ks) {
      if (k == 0) throw Error(ErrorKind::Domain, "--top-k values must be >= 1");
    }
  }
  if (!(config.normalization.missing_drop_fraction > 0 && config.normalization.missing_drop_fraction <= 1)) {
    throw Error(ErrorKind::Domain, "--drop-fraction must lie in (0, 1]");
  }
  for (const auto& e : config.emit) {
    if (!known_exports().count(e)) throw Error(ErrorKind::Domain, "unknown export '" + e + "'");
  }
}

std::string network_tag(const InferenceResult& result, const SweepEntry& entry) {
  return result.threshold_mode ? std::string("threshold") : "k" + std::to_string(entry.k);
}

InferenceResult run_inference(const RunConfig& config) {
  validate(config);
  InferenceResult r;

  auto matrix = stage("ingest", [&] {
    RawMatrix raw = config.format == InputFormat::Tsv ? read_tsv_matrix(config.input) : parse_series_matrix(config.input);
    return attach_labels(std::move(raw), read_labels(config.labels), config.classes);
  });
  r.genes_in = matrix.genes();

  auto pre = stage("preprocess", [&] { return preprocess(matrix, config.normalization); });
  r.preprocessed = std::move(pre.matrix);
  r.preprocess_report = std::move(pre.report);

  r.selection = stage("degfilter", [&] { return select_significant(r.preprocessed, config.alpha, config.workers); });
  if (r.selection.records.size() < 2) {
    throw Error(ErrorKind::EmptyResult, "degfilter: " + std::to_string(r.selection.records.size()) +
                                            " gene(s) pass p < " + format_shortest(config.alpha) +
                                            "; a network needs at least 2");
  }

  const auto& sig = r.selection.matrix;
  r.bins = config.bins == 0 ? sturges_bins(sig.samples()) : config.bins;
  stage("mi", [&] {
    r.profiles.reserve(sig.genes());
    for (std::size_t g = 0; g < sig.genes(); ++g) {
      r.profiles.push_back(discretize_equal_width(sig.row(g), r.bins, sig.gene_ids()[g]));
    }
    AllPairsOptions options;
    options.base = config.log_base;
    options.workers = config.workers;
    r.pairs = all_pairs_mi(r.profiles, options);
  });

  stage("network", [&] {
    if (config.min_mi) {
      r.threshold_mode = true;
      auto net = build_threshold(r.pairs, sig.gene_ids(), *config.min_mi);
      auto report = degree_report(net, config.hubs);
      const auto k = net.edges().size();
      r.networks.push_back({k, std::move(net), std::move(report)});
    } else {
      r.networks = network_sweep(r.pairs, sig.gene_ids(), config.ks, config.hubs);
    }
  });
  return r;
}

std::string json_report(const InferenceResult& r, const RunConfig& config) {
  using nlohmann::ordered_json;
  ordered_json j;

  ordered_json params;
  params["input"] = config.input.string();
  params["format"] = config.format == InputFormat::Tsv ? "tsv" : "series-matrix";
  params["labels"] = config.labels.string();
  params["classes"] = {{"tumor", r.preprocessed.class_names().tumor}, {"normal", r.preprocessed.class_names().normal}};
  params["alpha"] = config.alpha;
  params["test"] = "welch-two-sided";
  if (config.min_mi) {
    params["min_mi"] = *config.min_mi;
  } else {
    params["top_k"] = config.ks;
  }
  params["bins_requested"] = config.bins == 0 ? ordered_json("auto") : ordered_json(config.bins);
  params["bins"] = r.bins;
  params["binning"] = "equal-width";
  params["log_base"] = std::string(log_base_name(config.log_base));
  params["normalization"] = {
      {"method", config.normalization.method == Normalization::ZScore ? "zscore" : "none"},
      {"log2", config.normalization.log2_transform},
      {"missing_drop_fraction", config.normalization.missing_drop_fraction},
      {"imputation", "class-mean"},
  };
  params["hubs"] = config.hubs;
  j["parameters"] = params;

  const auto& rep = r.preprocess_report;
  ordered_json counts;
  counts["genes_in"] = r.genes_in;
  counts["dropped_unnamed"] = rep.dropped_unnamed.size();
  counts["dropped_missing"] = rep.dropped_missing.size();
  counts["dropped_zero_variance"] = rep.dropped_zero_variance.size();
  counts["imputed_cells"] = rep.imputed_cells;
  counts["genes_tested"] = r.selection.all.size();
  counts["genes_significant"] = r.selection.records.size();
  counts["pairs_scored"] = r.pairs.size();
  j["counts"] = counts;

  auto constant = ordered_json::array();
  for (const auto& p : r.profiles) {
    if (p.constant) constant.push_back(p.gene_id);
  }
  j["constant_profiles"] = constant;
  j["dropped_zero_variance"] = rep.dropped_zero_variance;

  auto nets = ordered_json::array();
  for (const auto& e : r.networks) {
    ordered_json n;
    n["tag"] = network_tag(r, e);
    n["k"] = e.k;
    n["nodes"] = e.network.nodes().size();
    n["edges"] = e.network.edges().size();
    std::size_t degree_sum = 0;
    for (auto d : e.network.degrees()) degree_sum += d;
    n["degree_sum"] = degree_sum;
    auto hubs = ordered_json::array();
    for (const auto& h : e.report.hubs) hubs.push_back({{"gene", h.gene}, {"degree", h.degree}});
    n["hubs"] = hubs;
    n["components"] = e.report.component_count();
    n["component_sizes"] = e.report.component_sizes;
    nets.push_back(n);
  }
  j["networks"] = nets;
  return j.dump(2) + "\n";
}

void write_artifacts(const InferenceResult& r, const RunConfig& config) {
  std::error_code ec;
  std::filesystem::create_directories(config.out_dir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create '" + config.out_dir.string() + "': " + ec.message());

  const auto& dir = config.out_dir;
  const auto wants = [&](const char* kind) { return config.emit.count(kind) > 0; };
  const auto& genes = r.selection.matrix.gene_ids();

  for (const auto& e : r.networks) {
    const auto tag = network_tag(r, e);
    if (wants("edgelist")) write_file(dir / ("edges_" + tag + ".tsv"), render([&](auto& o) { write_edge_list(o, e.network); }));
    if (wants("graphml")) write_file(dir / ("network_" + tag + ".graphml"), render([&](auto& o) { write_graphml(o, e.network); }));
    if (wants("dot")) write_file(dir / ("network_" + tag + ".dot"), render([&](auto& o) { write_dot(o, e.network); }));
  }
  if (wants("mi-matrix")) write_file(dir / "mi_pairs.tsv", render([&](auto& o) { write_mi_pairs(o, r.pairs, genes); }));
  if (wants("deg-report")) {
    write_file(dir / "deg.tsv", render([&](auto& o) { write_deg_report(o, r.selection.records); }));
  }
  if (wants("summary")) {
    write_file(dir / "sample_summary.tsv",
               render([&](auto& o) { write_sample_summary(o, sample_summary(r.preprocessed)); }));
  }
  if (wants("json")) write_file(dir / "report.json", json_report(r, config));
}

std::string summary_line(const InferenceResult& r) {
  std::ostringstream out;
  out << "genes_in=" << r.genes_in << " genes_significant=" << r.selection.records.size()
      << " pairs_scored=" << r.pairs.size() << " edges=";
  for (std::size_t n = 0; n < r.networks.size(); ++n) {
    out << (n ? "," : "") << r.networks[n].network.edges().size();
  }
  const auto& last = r.networks.back();
  out << " top_hub=";
  if (!last.report.hubs.empty()) out << last.report.hubs.front().gene << "(" << last.report.hubs.front().degree << ")";
  return out.str();
}

}  // namespace grn
