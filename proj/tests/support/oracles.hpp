#pragma once

// Independent reference computations for tests. Nothing here calls into the
// library's statistical code.

#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <numbers>
#include <utility>
#include <vector>

namespace grn::oracle {

/// MI = sum p(x,y) log2(p(x,y) / (p(x) p(y))) over the joint empirical distribution.
inline double mi_kl_form(const std::vector<unsigned>& x, const std::vector<unsigned>& y) {
  const double n = static_cast<double>(x.size());
  std::map<std::pair<unsigned, unsigned>, double> joint;
  std::map<unsigned, double> px;
  std::map<unsigned, double> py;
  for (std::size_t s = 0; s < x.size(); ++s) {
    joint[{x[s], y[s]}] += 1.0 / n;
    px[x[s]] += 1.0 / n;
    py[y[s]] += 1.0 / n;
  }
  double mi = 0;
  for (const auto& [cell, p] : joint) mi += p * std::log2(p / (px[cell.first] * py[cell.second]));
  return mi;
}

inline double entropy_direct(const std::vector<unsigned>& x) {
  std::map<unsigned, double> p;
  for (auto v : x) p[v] += 1.0 / static_cast<double>(x.size());
  double h = 0;
  for (const auto& [k, q] : p) h -= q * std::log2(q);
  return h;
}

inline double student_t_density(double x, double df) {
  const double log_c = std::lgamma(0.5 * (df + 1)) - std::lgamma(0.5 * df) - 0.5 * std::log(df * std::numbers::pi);
  return std::exp(log_c - 0.5 * (df + 1) * std::log1p(x * x / df));
}

namespace detail {
inline double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
                       double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(a, m, fa, flm, fm);
  const double right = simpson(m, b, fm, frm, fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol) return left + right + (left + right - whole) / 15.0;
  return adaptive(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}
}  // namespace detail

/// Adaptive Simpson quadrature of f over [a, b].
inline double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-13) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  return detail::adaptive(f, a, b, fa, fm, fb, detail::simpson(a, b, fa, fm, fb), tol, 60);
}

/// 2 P(T_df >= |t|) = 1 - 2 * integral_0^|t| density.
inline double two_sided_p_by_quadrature(double t, double df) {
  const double upper = std::abs(t);
  const double central = integrate([df](double x) { return student_t_density(x, df); }, 0.0, upper);
  return 1.0 - 2.0 * central;
}

}  // namespace grn::oracle
