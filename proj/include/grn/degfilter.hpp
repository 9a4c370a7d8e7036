#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "grn/expression_matrix.hpp"

namespace grn {

/// Welch two-sample test result for one gene.
///
/// `t` is (mean_normal - mean_tumor) / sqrt(var_tumor/n_tumor + var_normal/n_normal),
/// with unbiased (n-1) variances. When both variances are zero the statistic
/// is 0 for equal means and +/-inf otherwise; `df` then falls back to the
/// pooled n_tumor + n_normal - 2 since Welch-Satterthwaite is undefined.
struct DegRecord {
  std::string gene_id;
  std::size_t row = 0;  // row in the matrix the record was computed from
  double mean_tumor = 0;
  double mean_normal = 0;
  double var_tumor = 0;
  double var_normal = 0;
  std::size_t n_tumor = 0;
  std::size_t n_normal = 0;
  double t = 0;
  double df = 0;
  double p = 1;
};

/// Statistic, means and variances for one gene. Throws grn::Error(Domain) if
/// either group has fewer than two values or a value is not finite.
DegRecord welch_t(std::span<const double> tumor, std::span<const double> normal);

/// Welch-Satterthwaite degrees of freedom. Throws when both variances are 0.
double welch_df(double var_tumor, std::size_t n_tumor, double var_normal, std::size_t n_normal);

/// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double regularized_incomplete_beta(double x, double a, double b);

/// 2 * P(T_df >= |t|) = I_{df/(df+t^2)}(df/2, 1/2).
double student_t_two_sided_p(double t, double df);

/// Full test for a single gene: welch_t, df and p filled.
DegRecord welch_test(std::span<const double> tumor, std::span<const double> normal);

struct DegSelection {
  ExpressionMatrix matrix;          // passing genes, original row order
  std::vector<DegRecord> records;   // passing genes, ascending p
  std::vector<DegRecord> all;       // every tested row, input order
  bool empty() const { return records.empty(); }
};

/// Tests every gene and keeps those with p < alpha (strict). Rows sharing a
/// gene id are reduced to the one with the largest |t| (first row wins a tie)
/// before filtering. `workers` = 0 uses the hardware concurrency.
/// An empty selection is returned, not thrown; `matrix` is then default.
DegSelection select_significant(const ExpressionMatrix& m, double alpha, unsigned workers = 1);

}  // namespace grn
