// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "grn/degfilter.hpp"
#include "grn/ingest.hpp"
#include "grn/kernels/joint_counts.hpp"
#include "grn/mi.hpp"
#include "grn/network.hpp"
#include "grn/synth.hpp"
#include "support/oracles.hpp"

namespace fs = std::filesystem;
using namespace grn;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail) {
  std::printf("[%s] %d. %s: %s\n", ok ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

void info(const std::string& text) {
  std::printf("[INFO] %s\n", text.c_str());
  std::fflush(stdout);
}

std::string num(double v, int digits = 6) {
  std::ostringstream s;
  s.precision(digits);
  s << v;
  return s.str();
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

DiscretizedProfile from_bins(std::vector<std::uint32_t> bins, std::size_t bin_count) {
  DiscretizedProfile d;
  d.gene_id = "g";
  d.bins = std::move(bins);
  d.bin_count = bin_count;
  return d;
}

std::vector<unsigned> as_unsigned(const DiscretizedProfile& d) { return {d.bins.begin(), d.bins.end()}; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Fixture shared by criteria 5 and 6: default synthetic data, preprocessed and
// discretized exactly as the pipeline does.
struct Fixture {
  SynthData data;
  ExpressionMatrix matrix;
  std::vector<DiscretizedProfile> profiles;
  MiPairList pairs;
};

Fixture build_fixture() {
  SynthSpec spec;
  auto data = generate_synthetic(spec);
  auto pre = preprocess(data.matrix, NormalizationSpec{});
  Fixture f{std::move(data), std::move(pre.matrix), {}, {}};
  const std::size_t bins = sturges_bins(f.matrix.samples());
  for (std::size_t g = 0; g < f.matrix.genes(); ++g) {
    f.profiles.push_back(discretize_equal_width(f.matrix.row(g), bins, f.matrix.gene_ids()[g]));
  }
  f.pairs = all_pairs_mi(f.profiles, {LogBase::Two, 0, kernels::active_isa()});
  return f;
}

void criterion_exhaustive_oracle() {
  const auto start = std::chrono::steady_clock::now();
  std::vector<DiscretizedProfile> all;
  for (unsigned code = 0; code < 81; ++code) {
    std::vector<std::uint32_t> v(4);
    unsigned c = code;
    for (auto& x : v) {
      x = c % 3;
      c /= 3;
    }
    all.push_back(from_bins(std::move(v), 3));
  }
  double worst = 0;
  for (const auto& x : all) {
    for (const auto& y : all) {
      worst = std::max(worst, std::abs(mutual_information(x, y) - oracle::mi_kl_form(as_unsigned(x), as_unsigned(y))));
    }
  }
  const double secs = seconds_since(start);
  report(1, "MI oracle equivalence (6561 pairs)", worst <= 1e-12 && secs < 5.0,
         "max |diff| = " + num(worst, 3) + ", " + num(secs, 3) + " s");
}

void criterion_invariants() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(42);
  std::size_t violations = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t samples = 5 + trial % 60;
    auto random_profile = [&](std::size_t bins) {
      std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(bins - 1));
      std::vector<std::uint32_t> v(samples);
      for (auto& b : v) b = pick(rng);
      return from_bins(std::move(v), bins);
    };
    const auto x = random_profile(1 + trial % 8);
    const auto y = random_profile(1 + (trial / 8) % 8);
    const double hx = entropy(x), hy = entropy(y), mi = mutual_information(x, y);

    std::vector<std::uint32_t> perm(x.bin_count);
    std::iota(perm.begin(), perm.end(), 0u);
    std::shuffle(perm.begin(), perm.end(), rng);
    auto relabeled = x;
    for (auto& b : relabeled.bins) b = perm[b];

    const bool ok = mi >= 0.0 && std::abs(mutual_information(x, x) - hx) <= 1e-12 &&
                    mi == mutual_information(y, x) && mi <= std::min(hx, hy) + 1e-12 &&
                    std::abs(mutual_information(relabeled, y) - mi) <= 1e-12;
    violations += !ok;
  }
  const double secs = seconds_since(start);
  report(2, "entropy/MI invariants (1000 random profiles)", violations == 0 && secs < 5.0,
         std::to_string(violations) + " violations, " + num(secs, 3) + " s");
}

void criterion_independence() {
  std::mt19937_64 rng(2718);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> xs(10000), ys(10000);
  for (auto& v : xs) v = unif(rng);
  for (auto& v : ys) v = unif(rng);
  const double mi = mutual_information(discretize_equal_width(xs, 6), discretize_equal_width(ys, 6));
  report(3, "independence sanity (M=10000, B=6)", mi <= 0.01, "MI = " + num(mi) + " bits");
  const std::size_t wide = sturges_bins(xs.size());
  const double mi_wide = mutual_information(discretize_equal_width(xs, wide), discretize_equal_width(ys, wide));
  info("same data at B=" + std::to_string(wide) + ": MI = " + num(mi_wide) + " bits (plug-in bias (B-1)^2/(2M ln2) = " +
       num((wide - 1.0) * (wide - 1.0) / (2.0 * xs.size() * std::log(2.0))) + ")");
}

void criterion_welch() {
  const std::vector<double> tumor{1, 2, 3}, normal{4, 6, 8, 10};
  const auto rec = welch_test(tumor, normal);
  const double t_expected = 2.5 / std::sqrt(0.5);
  const double df_expected = 216.0 / 53.0;
  const double p2 = student_t_two_sided_p(2.0, 10.0);
  const double p2_oracle = oracle::two_sided_p_by_quadrature(2.0, 10.0);

  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> tdist(-8.0, 8.0);
  std::uniform_real_distribution<double> dfdist(1.0, 60.0);
  double worst = 0;
  for (int n = 0; n < 100; ++n) {
    const double t = tdist(rng), df = dfdist(rng);
    worst = std::max(worst, std::abs(student_t_two_sided_p(t, df) - oracle::two_sided_p_by_quadrature(t, df)));
  }

  const bool ok = std::abs(rec.t - t_expected) <= 1e-9 && std::abs(rec.df - df_expected) <= 1e-9 &&
                  std::abs(p2 - p2_oracle) <= 1e-4 && std::abs(p2 - 0.0734) <= 1e-4 && worst <= 1e-6;
  report(4, "Welch t / df / p oracles", ok,
         "t = " + num(rec.t, 12) + ", df = " + num(rec.df, 12) + " (216/53), p(2,10) = " + num(p2, 8) +
             " vs quadrature " + num(p2_oracle, 8) + ", random max |diff| = " + num(worst, 3));
  info("quoted df 4.1158 differs from the Welch-Satterthwaite value 216/53 = " + num(df_expected, 10) +
       " by " + num(std::abs(4.1158 - df_expected), 4) + "; the exact value is asserted");
}

void criterion_planted(const Fixture& f, double build_secs) {
  const auto start = std::chrono::steady_clock::now();
  std::set<std::pair<std::string, std::string>> planted;
  for (auto [a, b] : f.data.planted_pairs) planted.emplace(std::min(a, b), std::max(a, b));

  const auto& ids = f.matrix.gene_ids();
  std::size_t hits = 0;
  for (std::size_t k = 0; k < 10 && k < f.pairs.size(); ++k) {
    const auto& p = f.pairs.entries[k];
    hits += planted.count({std::min(ids[p.i], ids[p.j]), std::max(ids[p.i], ids[p.j])});
  }

  // Null distribution: oracle MI over pairs of genes with no planted structure.
  std::set<std::string> structured(f.data.deg_genes.begin(), f.data.deg_genes.end());
  for (const auto& [a, b] : f.data.planted_pairs) structured.insert({a, b});
  std::vector<std::size_t> null_rows;
  for (std::size_t g = 0; g < ids.size(); ++g) {
    if (!structured.count(ids[g])) null_rows.push_back(g);
  }
  std::vector<double> null_mi;
  for (std::size_t a = 0; a < null_rows.size(); ++a) {
    for (std::size_t b = a + 1; b < null_rows.size(); ++b) {
      null_mi.push_back(oracle::mi_kl_form(as_unsigned(f.profiles[null_rows[a]]), as_unsigned(f.profiles[null_rows[b]])));
    }
  }
  std::sort(null_mi.begin(), null_mi.end());
  const double p95 = null_mi[static_cast<std::size_t>(std::ceil(0.95 * null_mi.size())) - 1];

  auto row_of = [&](const std::string& id) {
    return static_cast<std::size_t>(std::find(ids.begin(), ids.end(), id) - ids.begin());
  };
  double weakest_planted = 1e300;
  for (const auto& [a, b] : f.data.planted_pairs) {
    weakest_planted = std::min(
        weakest_planted, oracle::mi_kl_form(as_unsigned(f.profiles[row_of(a)]), as_unsigned(f.profiles[row_of(b)])));
  }

  const auto selection = select_significant(f.matrix, 0.01, 0);
  std::set<std::string> significant;
  for (const auto& r : selection.records) significant.insert(r.gene_id);
  std::size_t degs_found = 0;
  for (const auto& g : f.data.deg_genes) degs_found += significant.count(g);

  const double secs = build_secs + seconds_since(start);
  const bool ok = hits >= 8 && weakest_planted > p95 && degs_found == f.data.deg_genes.size() && secs < 10.0;
  report(5, "planted recovery (G=50, 12/8, 10 pairs)", ok,
         std::to_string(hits) + "/10 top edges planted, weakest planted MI " + num(weakest_planted) + " > null p95 " +
             num(p95) + ", DEGs " + std::to_string(degs_found) + "/" + std::to_string(f.data.deg_genes.size()) +
             " at alpha 0.01, " + num(secs, 3) + " s");
}

void criterion_network(const Fixture& f) {
  const std::vector<std::size_t> ks{1, 2, 30, 500};
  std::vector<SweepEntry> sweep;
  std::string problem;
  try {
    sweep = network_sweep(f.pairs, f.matrix.gene_ids(), ks);
  } catch (const std::exception& e) {
    problem = e.what();
  }
  const std::size_t total = pair_count(f.matrix.genes());
  std::set<std::pair<std::string, std::string>> previous;
  std::string counts;
  for (const auto& entry : sweep) {
    const auto& net = entry.network;
    const std::size_t edges = net.edges().size();
    counts += (counts.empty() ? "" : ",") + std::to_string(edges);
    if (edges != std::min(entry.k, total)) problem = "edge count at K=" + std::to_string(entry.k);
    if (std::accumulate(net.degrees().begin(), net.degrees().end(), std::size_t{0}) != 2 * edges) {
      problem = "degree sum at K=" + std::to_string(entry.k);
    }
    double min_kept = 1e300;
    for (const auto& e : net.edges()) min_kept = std::min(min_kept, e.mi);
    if (edges < f.pairs.size() && f.pairs.entries[edges].mi > min_kept) problem = "weight dominance at K=" + std::to_string(entry.k);

    std::set<std::pair<std::string, std::string>> current;
    for (const auto& e : net.edges()) current.emplace(net.nodes()[e.a], net.nodes()[e.b]);
    if (!std::includes(current.begin(), current.end(), previous.begin(), previous.end())) {
      problem = "edge-set monotonicity at K=" + std::to_string(entry.k);
    }
    previous = std::move(current);
  }
  report(6, "network structure (K in {1,2,30,500})", problem.empty() && sweep.size() == ks.size(),
         problem.empty() ? "edges " + counts + " of " + std::to_string(total) : problem);
}

void criterion_determinism() {
  const fs::path root = fs::temp_directory_path() / ("grn_accept_" + std::to_string(::getpid()));
  fs::remove_all(root);
  SynthSpec spec;
  write_synthetic(generate_synthetic(spec), spec, root / "fixture");
  const std::string base = std::string(GRN_CLI_PATH) + " infer --input " + (root / "fixture" / "expression.tsv").string() +
                           " --labels " + (root / "fixture" / "labels.tsv").string() +
                           " --alpha 0.5 --top-k 1,2,30,500" +
                           " --emit edgelist,graphml,dot,json,mi-matrix,deg-report,summary";
  auto run = [&](unsigned workers) {
    const std::string cmd = base + " --workers " + std::to_string(workers) + " --out-dir " +
                            (root / ("w" + std::to_string(workers))).string() + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  };
  const int rc1 = run(1), rc8 = run(8);

  std::size_t compared = 0, differing = 0;
  std::set<std::string> names1, names8;
  if (rc1 == 0 && rc8 == 0) {
    for (const auto& e : fs::directory_iterator(root / "w1")) names1.insert(e.path().filename().string());
    for (const auto& e : fs::directory_iterator(root / "w8")) names8.insert(e.path().filename().string());
    for (const auto& name : names1) {
      ++compared;
      differing += slurp(root / "w1" / name) != slurp(root / "w8" / name);
    }
  }
  fs::remove_all(root);
  report(7, "determinism (workers 1 vs 8)", rc1 == 0 && rc8 == 0 && names1 == names8 && compared > 0 && differing == 0,
         "exit " + std::to_string(rc1) + "/" + std::to_string(rc8) + ", " + std::to_string(compared) +
             " files compared, " + std::to_string(differing) + " differ");
}

void criterion_scale() {
  const std::size_t genes = 2000, samples = 20;
  std::mt19937_64 rng(2000);
  std::normal_distribution<double> val(0.0, 1.0);
  std::vector<DiscretizedProfile> profiles;
  profiles.reserve(genes);
  std::vector<double> row(samples);
  for (std::size_t g = 0; g < genes; ++g) {
    for (auto& v : row) v = val(rng);
    profiles.push_back(discretize_equal_width(row, sturges_bins(samples), "g" + std::to_string(g)));
  }
  const auto start = std::chrono::steady_clock::now();
  const auto pairs = all_pairs_mi(profiles, {LogBase::Two, 0, kernels::active_isa()});
  const double secs = seconds_since(start);
  report(8, "scale (2000 genes x 20 samples all-pairs MI)", pairs.size() == pair_count(genes) && secs < 10.0,
         std::to_string(pairs.size()) + " pairs in " + num(secs, 3) + " s, kernel " +
             std::string(kernels::isa_name(kernels::active_isa())) + ", " +
             std::to_string(std::max(1u, std::thread::hardware_concurrency())) + " hardware threads");
}

}  // namespace

int main() {
  criterion_exhaustive_oracle();
  criterion_invariants();
  criterion_independence();
  criterion_welch();

  const auto start = std::chrono::steady_clock::now();
  const Fixture fixture = build_fixture();
  const double build_secs = seconds_since(start);
  criterion_planted(fixture, build_secs);
  criterion_network(fixture);

  criterion_determinism();
  criterion_scale();

  std::printf("%s: %d failure(s)\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
