#include "grn/synth.hpp"

#include <cstdio>
#include <fstream>
#include <random>

#include "grn/error.hpp"
#include "grn/ingest.hpp"
#include "json.hpp"

namespace grn {
namespace {

std::string numbered(const char* prefix, std::size_t n, int width) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%0*zu", prefix, width, n);
  return buf;
}

int digits(std::size_t n) {
  int d = 1;
  while (n >= 10) {
    n /= 10;
    ++d;
  }
  return d;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + path.string() + "'");
  return out;
}

}  // namespace

SynthData generate_synthetic(const SynthSpec& spec) {
  if (spec.deg_count + 2 * spec.pair_count > spec.genes) {
    throw Error(ErrorKind::Domain, "planted genes (" + std::to_string(spec.deg_count) + " DEGs + 2 x " +
                                       std::to_string(spec.pair_count) + " pair genes) exceed gene count " +
                                       std::to_string(spec.genes));
  }
  if (spec.tumor_samples < 2 || spec.normal_samples < 2) {
    throw Error(ErrorKind::Domain, "each class needs at least 2 samples");
  }
  if (spec.noise < 0) throw Error(ErrorKind::Domain, "noise must be non-negative");

  const std::size_t samples = spec.tumor_samples + spec.normal_samples;
  std::vector<std::string> sample_ids;
  std::vector<SampleClass> labels;
  for (std::size_t s = 0; s < spec.tumor_samples; ++s) {
    sample_ids.push_back(numbered("T", s + 1, digits(spec.tumor_samples)));
    labels.push_back(SampleClass::Tumor);
  }
  for (std::size_t s = 0; s < spec.normal_samples; ++s) {
    sample_ids.push_back(numbered("N", s + 1, digits(spec.normal_samples)));
    labels.push_back(SampleClass::Normal);
  }

  std::vector<std::string> gene_ids;
  for (std::size_t g = 0; g < spec.genes; ++g) gene_ids.push_back(numbered("gene_", g + 1, std::max(3, digits(spec.genes))));

  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> unit(0.0, 1.0);
  std::vector<double> values(spec.genes * samples);
  for (double& v : values) v = spec.baseline + unit(rng);

  SynthData data;
  for (std::size_t g = 0; g < spec.deg_count; ++g) {
    for (std::size_t s = spec.tumor_samples; s < samples; ++s) values[g * samples + s] += spec.shift;
    data.deg_genes.push_back(gene_ids[g]);
  }
  for (std::size_t p = 0; p < spec.pair_count; ++p) {
    const std::size_t x = spec.deg_count + 2 * p;
    const std::size_t y = x + 1;
    for (std::size_t s = 0; s < samples; ++s) values[y * samples + s] = values[x * samples + s] + spec.noise * unit(rng);
    data.planted_pairs.emplace_back(gene_ids[x], gene_ids[y]);
  }

  data.matrix = ExpressionMatrix(std::move(gene_ids), std::move(sample_ids), std::move(values), std::move(labels));
  return data;
}

void write_synthetic(const SynthData& data, const SynthSpec& spec, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create '" + dir.string() + "': " + ec.message());

  {
    auto out = open_output(dir / "expression.tsv");
    write_tsv_matrix(out, data.matrix);
  }
  {
    auto out = open_output(dir / "labels.tsv");
    write_labels(out, data.matrix);
  }

  nlohmann::ordered_json manifest;
  manifest["seed"] = spec.seed;
  manifest["genes"] = spec.genes;
  manifest["tumor_samples"] = spec.tumor_samples;
  manifest["normal_samples"] = spec.normal_samples;
  manifest["baseline"] = spec.baseline;
  manifest["shift"] = spec.shift;
  manifest["noise"] = spec.noise;
  manifest["deg_genes"] = data.deg_genes;
  auto pairs = nlohmann::ordered_json::array();
  for (const auto& [a, b] : data.planted_pairs) pairs.push_back({a, b});
  manifest["planted_pairs"] = pairs;
  auto out = open_output(dir / "manifest.json");
  out << manifest.dump(2) << '\n';
}

}  // namespace grn
