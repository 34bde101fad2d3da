#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls into the library's numerical routines.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numeric>
#include <vector>

namespace oracle {

using Dense = std::vector<std::vector<double>>;
using Cx = std::complex<double>;

inline std::vector<double> matvec(const Dense& m, const std::vector<double>& x) {
  std::vector<double> y(m.size(), 0.0);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) y[i] += m[i][j] * x[j];
  return y;
}

inline Dense matmul(const Dense& a, const Dense& b) {
  const std::size_t n = a.size();
  Dense c(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

/// Determinant by Leibniz expansion over all permutations (n <= 8).
inline double leibniz_det(const Dense& m) {
  const std::size_t n = m.size();
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  double det = 0.0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (p[i] > p[j]) ++inversions;
    double term = inversions % 2 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < n; ++i) term *= m[i][p[i]];
    det += term;
  } while (std::next_permutation(p.begin(), p.end()));
  return det;
}

/// det(t I - A) evaluated directly.
inline double char_poly_at(const Dense& a, double t) {
  Dense m = a;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (double& v : m[i]) v = -v;
    m[i][i] += t;
  }
  return leibniz_det(m);
}

/// Roots of z^2 + a z + b by the textbook formula in complex arithmetic.
inline std::pair<Cx, Cx> naive_quadratic(Cx a, Cx b) {
  const Cx r = std::sqrt(a * a - 4.0 * b);
  return {(-a + r) / 2.0, (-a - r) / 2.0};
}

/// Largest |root| of z^2 - s z + p (MLA / accelerated form).
inline double max_root_modulus(double s, double p) {
  auto [z1, z2] = naive_quadratic(Cx(-s, 0.0), Cx(p, 0.0));
  return std::max(std::abs(z1), std::abs(z2));
}

/// Exhaustive non-dominant modulus for an eigenvalue list: every lambda maps
/// to the roots of z^2 - s(l) z + p(l); from the largest eigenvalue's pair the
/// root closest to 1 is dropped.
inline double nondominant_modulus(const std::vector<double>& eigs, const std::function<double(double)>& s,
                                  const std::function<double(double)>& p) {
  double worst = 0.0;
  const double top = *std::max_element(eigs.begin(), eigs.end());
  bool dropped = false;
  for (double l : eigs) {
    auto [z1, z2] = naive_quadratic(Cx(-s(l), 0.0), Cx(p(l), 0.0));
    if (!dropped && l == top) {
      dropped = true;
      const Cx keep = std::abs(z1 - 1.0) <= std::abs(z2 - 1.0) ? z2 : z1;
      worst = std::max(worst, std::abs(keep));
      continue;
    }
    worst = std::max({worst, std::abs(z1), std::abs(z2)});
  }
  return worst;
}

/// Grid minimum of f over [lo, hi] with `points` samples, refined once around the best sample.
inline std::pair<double, double> grid_minimize(const std::function<double(double)>& f, double lo, double hi,
                                               int points) {
  double best_x = lo, best_f = f(lo);
  for (int pass = 0; pass < 3; ++pass) {
    const double h = (hi - lo) / points;
    for (int i = 0; i <= points; ++i) {
      const double x = lo + h * i;
      const double v = f(x);
      if (v < best_f) best_f = v, best_x = x;
    }
    lo = std::max(lo, best_x - h);
    hi = std::min(hi, best_x + h);
  }
  return {best_x, best_f};
}

/// A^k > 0 pattern test through plain floating-point matrix powers of the 0/1 indicator.
inline bool indicator_power_positive(const Dense& a, int k) {
  const std::size_t n = a.size();
  Dense ind(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) ind[i][j] = a[i][j] > 0.0 ? 1.0 : 0.0;
  Dense p = ind;
  for (int i = 1; i < k; ++i) {
    p = matmul(p, ind);
    for (auto& row : p)
      for (double& v : row) v = v > 0.0 ? 1.0 : 0.0;
  }
  for (const auto& row : p)
    for (double v : row)
      if (v <= 0.0) return false;
  return true;
}

}  // namespace oracle
