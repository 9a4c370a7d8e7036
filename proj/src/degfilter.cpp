#include "grn/degfilter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "grn/error.hpp"
#include "grn/parallel.hpp"

namespace grn {
namespace {

struct Moments {
  double mean = 0;
  double var = 0;
};

Moments moments(std::span<const double> v) {
  Moments m;
  m.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  double ss = 0;
  for (double x : v) ss += (x - m.mean) * (x - m.mean);
  m.var = ss / static_cast<double>(v.size() - 1);
  return m;
}

void check_group(std::span<const double> v, const char* name) {
  if (v.size() < 2) {
    throw Error(ErrorKind::Domain, std::string(name) + " group needs at least 2 values, got " + std::to_string(v.size()));
  }
  for (double x : v) {
    if (!std::isfinite(x)) throw Error(ErrorKind::Domain, std::string(name) + " group contains a non-finite value");
  }
}

// Modified Lentz evaluation of the continued fraction for I_x(a, b).
double beta_continued_fraction(double x, double a, double b) {
  constexpr int kMaxIter = 100000;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  throw Error(ErrorKind::Domain, "incomplete beta continued fraction did not converge");
}

}  // namespace

double regularized_incomplete_beta(double x, double a, double b) {
  if (!(a > 0 && b > 0)) throw Error(ErrorKind::Domain, "incomplete beta requires a > 0 and b > 0");
  if (!(x >= 0 && x <= 1)) throw Error(ErrorKind::Domain, "incomplete beta requires x in [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front =
      std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  // The fraction converges fast for x < (a+1)/(a+b+2); use the symmetry otherwise.
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(x, a, b) / a;
  return 1.0 - front * beta_continued_fraction(1.0 - x, b, a) / b;
}

double student_t_two_sided_p(double t, double df) {
  if (!(df > 0)) throw Error(ErrorKind::Domain, "degrees of freedom must be positive");
  if (std::isnan(t)) throw Error(ErrorKind::Domain, "t statistic is NaN");
  if (std::isinf(t)) return 0.0;
  if (t == 0.0) return 1.0;
  const double x = df / (df + t * t);
  return std::clamp(regularized_incomplete_beta(x, 0.5 * df, 0.5), 0.0, 1.0);
}

double welch_df(double var_tumor, std::size_t n_tumor, double var_normal, std::size_t n_normal) {
  if (n_tumor < 2 || n_normal < 2) throw Error(ErrorKind::Domain, "welch_df needs group sizes >= 2");
  if (var_tumor < 0 || var_normal < 0) throw Error(ErrorKind::Domain, "welch_df needs non-negative variances");
  if (var_tumor == 0 && var_normal == 0) throw Error(ErrorKind::Domain, "welch_df undefined when both variances are 0");
  const double a = var_tumor / static_cast<double>(n_tumor);
  const double b = var_normal / static_cast<double>(n_normal);
  const double num = (a + b) * (a + b);
  const double den = a * a / static_cast<double>(n_tumor - 1) + b * b / static_cast<double>(n_normal - 1);
  return num / den;
}

DegRecord welch_t(std::span<const double> tumor, std::span<const double> normal) {
  check_group(tumor, "tumor");
  check_group(normal, "normal");
  const auto mt = moments(tumor);
  const auto mn = moments(normal);
  DegRecord r;
  r.mean_tumor = mt.mean;
  r.mean_normal = mn.mean;
  r.var_tumor = mt.var;
  r.var_normal = mn.var;
  r.n_tumor = tumor.size();
  r.n_normal = normal.size();
  const double se2 = mt.var / static_cast<double>(tumor.size()) + mn.var / static_cast<double>(normal.size());
  const double diff = mn.mean - mt.mean;
  if (se2 > 0) {
    r.t = diff / std::sqrt(se2);
  } else if (diff == 0) {
    r.t = 0;
  } else {
    r.t = diff > 0 ? std::numeric_limits<double>::infinity() : -std::numeric_limits<double>::infinity();
  }
  return r;
}

DegRecord welch_test(std::span<const double> tumor, std::span<const double> normal) {
  DegRecord r = welch_t(tumor, normal);
  if (r.var_tumor == 0 && r.var_normal == 0) {
    r.df = static_cast<double>(r.n_tumor + r.n_normal - 2);
    r.p = r.t == 0 ? 1.0 : 0.0;
    return r;
  }
  r.df = welch_df(r.var_tumor, r.n_tumor, r.var_normal, r.n_normal);
  r.p = student_t_two_sided_p(r.t, r.df);
  return r;
}

DegSelection select_significant(const ExpressionMatrix& m, double alpha, unsigned workers) {
  if (!(alpha > 0 && alpha < 1)) throw Error(ErrorKind::Domain, "alpha must lie in (0, 1)");
  if (m.has_missing()) throw Error(ErrorKind::Domain, "select_significant needs a matrix without missing values");

  std::vector<std::size_t> tumor_cols;
  std::vector<std::size_t> normal_cols;
  for (std::size_t s = 0; s < m.samples(); ++s) {
    (m.labels()[s] == SampleClass::Tumor ? tumor_cols : normal_cols).push_back(s);
  }

  DegSelection out;
  out.all.resize(m.genes());
  parallel_for_chunks(m.genes(), workers, [&](std::size_t begin, std::size_t end) {
    std::vector<double> tumor(tumor_cols.size());
    std::vector<double> normal(normal_cols.size());
    for (std::size_t g = begin; g < end; ++g) {
      auto row = m.row(g);
      for (std::size_t k = 0; k < tumor_cols.size(); ++k) tumor[k] = row[tumor_cols[k]];
      for (std::size_t k = 0; k < normal_cols.size(); ++k) normal[k] = row[normal_cols[k]];
      DegRecord r = welch_test(tumor, normal);
      r.gene_id = m.gene_ids()[g];
      r.row = g;
      out.all[g] = std::move(r);
    }
  });

  // Duplicate ids: keep the row with the largest |t|.
  std::unordered_map<std::string, std::size_t> best;
  for (std::size_t g = 0; g < out.all.size(); ++g) {
    auto [it, inserted] = best.emplace(out.all[g].gene_id, g);
    if (!inserted && std::abs(out.all[g].t) > std::abs(out.all[it->second].t)) it->second = g;
  }

  std::vector<std::size_t> keep;
  for (std::size_t g = 0; g < out.all.size(); ++g) {
    if (best.at(out.all[g].gene_id) == g && out.all[g].p < alpha) keep.push_back(g);
  }
  if (keep.empty()) return out;

  for (std::size_t g : keep) out.records.push_back(out.all[g]);
  std::stable_sort(out.records.begin(), out.records.end(),
                   [](const DegRecord& a, const DegRecord& b) { return a.p < b.p; });
  out.matrix = m.select_rows(keep);
  return out;
}

}  // namespace grn
