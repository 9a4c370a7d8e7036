// grn: relevance-network inference from two-class expression matrices.
//
//   grn infer     --input expr.tsv --labels labels.tsv --top-k 30,40,50 --out-dir out/
//   grn synth     --genes 50 --seed 7 --out-dir fixture/
//   grn summarize --input expr.tsv --labels labels.tsv

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "grn/error.hpp"
#include "grn/ingest.hpp"
#include "grn/pipeline.hpp"
#include "grn/synth.hpp"

namespace {

std::optional<std::pair<std::string, std::string>> parse_classes(const std::string& text) {
  if (text.empty()) return std::nullopt;
  const auto comma = text.find(',');
  if (comma == std::string::npos || text.find(',', comma + 1) != std::string::npos) {
    throw grn::Error(grn::ErrorKind::Label, "--classes expects 'tumor_name,normal_name'");
  }
  return std::make_pair(text.substr(0, comma), text.substr(comma + 1));
}

grn::InputFormat parse_format(const std::string& text) {
  return text == "series-matrix" ? grn::InputFormat::SeriesMatrix : grn::InputFormat::Tsv;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relevance-network inference: Welch t-test filter, pairwise mutual information, top-K networks"};
  app.require_subcommand(1);

  // infer
  grn::RunConfig config;
  std::string format = "tsv";
  std::string classes;
  std::string log_base = "2";
  std::string normalize = "zscore";
  std::vector<std::string> emit;
  std::vector<std::size_t> ks;
  double min_mi = 0;
  auto* infer = app.add_subcommand("infer", "Run preprocessing, DEG filtering, MI scoring and network construction");
  infer->add_option("--input", config.input, "Expression matrix")->required();
  infer->add_option("--format", format, "Input format")->check(CLI::IsMember({"tsv", "series-matrix"}));
  infer->add_option("--labels", config.labels, "sample_id<TAB>class file")->required();
  infer->add_option("--classes", classes, "tumor,normal class names (first plays the tumor role)");
  infer->add_option("--alpha", config.alpha, "Significance level, keep p < alpha");
  infer->add_option("--top-k", ks, "Edge counts, repeatable or comma separated")->delimiter(',');
  auto* min_mi_opt = infer->add_option("--min-mi", min_mi, "Keep every pair with MI >= value instead of top-K");
  infer->add_option("--bins", config.bins, "Bins per profile (0 = Sturges)");
  infer->add_option("--log-base", log_base, "Entropy log base")->check(CLI::IsMember({"2", "e"}));
  infer->add_option("--normalize", normalize, "Per-gene normalization")->check(CLI::IsMember({"none", "zscore"}));
  infer->add_flag("--log2", config.normalization.log2_transform, "Apply log2(x+1) before normalization");
  infer->add_option("--drop-fraction", config.normalization.missing_drop_fraction,
                    "Drop genes with more than this share of missing values");
  infer->add_option("--hubs", config.hubs, "Hub genes reported per network");
  infer->add_option("--out-dir", config.out_dir, "Output directory")->envname("GRN_OUT_DIR");
  infer->add_option("--emit", emit, "edgelist,graphml,dot,json,mi-matrix,deg-report,summary")->delimiter(',');
  infer->add_option("--workers", config.workers, "Worker threads (0 = all cores)")->envname("GRN_WORKERS");

  // synth
  grn::SynthSpec synth_spec;
  std::filesystem::path synth_dir = "synth_out";
  auto* synth = app.add_subcommand("synth", "Write a synthetic two-class fixture with planted structure");
  synth->add_option("--genes", synth_spec.genes, "Gene count");
  synth->add_option("--tumor", synth_spec.tumor_samples, "Tumor samples");
  synth->add_option("--normal", synth_spec.normal_samples, "Normal samples");
  synth->add_option("--degs", synth_spec.deg_count, "Planted differentially expressed genes");
  synth->add_option("--shift", synth_spec.shift, "Class mean shift of planted DEGs");
  synth->add_option("--pairs", synth_spec.pair_count, "Planted dependent pairs");
  synth->add_option("--noise", synth_spec.noise, "Noise sd of the dependent partner");
  synth->add_option("--seed", synth_spec.seed, "RNG seed");
  synth->add_option("--out-dir", synth_dir, "Output directory")->envname("GRN_OUT_DIR");

  // summarize
  std::filesystem::path summary_input;
  std::filesystem::path summary_labels;
  std::string summary_format = "tsv";
  std::string summary_output = "-";
  auto* summarize = app.add_subcommand("summarize", "Per-sample mean/median/stddev/min/max table");
  summarize->add_option("--input", summary_input, "Expression matrix")->required();
  summarize->add_option("--format", summary_format, "Input format")->check(CLI::IsMember({"tsv", "series-matrix"}));
  summarize->add_option("--labels", summary_labels, "sample_id<TAB>class file")->required();
  summarize->add_option("--classes", classes, "tumor,normal class names");
  summarize->add_option("--output", summary_output, "Output TSV ('-' for stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (infer->parsed()) {
      config.format = parse_format(format);
      config.classes = parse_classes(classes);
      config.log_base = log_base == "e" ? grn::LogBase::E : grn::LogBase::Two;
      config.normalization.method = normalize == "none" ? grn::Normalization::None : grn::Normalization::ZScore;
      if (!ks.empty()) config.ks = ks;
      if (*min_mi_opt) config.min_mi = min_mi;
      if (!emit.empty()) config.emit = {emit.begin(), emit.end()};
      const auto result = grn::run_inference(config);
      grn::write_artifacts(result, config);
      std::cout << grn::summary_line(result) << '\n';
    } else if (synth->parsed()) {
      const auto data = grn::generate_synthetic(synth_spec);
      grn::write_synthetic(data, synth_spec, synth_dir);
      std::cout << "wrote " << data.matrix.genes() << " genes x " << data.matrix.samples() << " samples to "
                << synth_dir.string() << '\n';
    } else if (summarize->parsed()) {
      auto raw = parse_format(summary_format) == grn::InputFormat::Tsv ? grn::read_tsv_matrix(summary_input)
                                                                       : grn::parse_series_matrix(summary_input);
      const auto m = grn::attach_labels(std::move(raw), grn::read_labels(summary_labels), parse_classes(classes));
      if (m.has_missing()) throw grn::Error(grn::ErrorKind::Domain, "summarize: matrix has missing values");
      const auto rows = grn::sample_summary(m);
      if (summary_output == "-") {
        grn::write_sample_summary(std::cout, rows);
      } else {
        std::ofstream out(summary_output, std::ios::binary);
        if (!out) throw grn::Error(grn::ErrorKind::Io, "cannot write '" + summary_output + "'");
        grn::write_sample_summary(out, rows);
      }
    }
  } catch (const grn::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return grn::exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
