#include "consensus/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "consensus/dynamics.hpp"
#include "consensus/errors.hpp"

namespace consensus {

namespace {

double off_diagonal_norm(const Matrix& m) {
  double s = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (i != j) s += m(i, j) * m(i, j);
  return std::sqrt(s);
}

// Zeroes m(p, q) by a Givens rotation applied on both sides; accumulates the
// rotation into the columns of v.
void rotate(Matrix& m, Matrix& v, std::size_t p, std::size_t q) {
  const double apq = m(p, q);
  if (apq == 0.0) return;
  const double app = m(p, p);
  const double aqq = m(q, q);
  const double theta = (aqq - app) / (2.0 * apq);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::hypot(1.0, theta));
  const double c = 1.0 / std::hypot(1.0, t);
  const double s = t * c;

  const std::size_t n = m.rows();
  for (std::size_t k = 0; k < n; ++k) {
    if (k == p || k == q) continue;
    const double mkp = m(k, p);
    const double mkq = m(k, q);
    m(k, p) = m(p, k) = c * mkp - s * mkq;
    m(k, q) = m(q, k) = s * mkp + c * mkq;
  }
  m(p, p) = app - t * apq;
  m(q, q) = aqq + t * apq;
  m(p, q) = m(q, p) = 0.0;

  for (std::size_t k = 0; k < n; ++k) {
    const double vkp = v(k, p);
    const double vkq = v(k, q);
    v(k, p) = c * vkp - s * vkq;
    v(k, q) = s * vkp + c * vkq;
  }
}

}  // namespace

Spectrum eigendecompose_symmetric(const Matrix& input) {
  if (!is_symmetric(input)) throw NotSymmetric("eigendecompose_symmetric requires a symmetric matrix");
  const std::size_t n = input.rows();

  // Work on the exactly symmetrised copy so rotations keep symmetry.
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = 0.5 * (input(i, j) + input(j, i));
  Matrix v = Matrix::identity(n);

  double off = off_diagonal_norm(m);
  int sweep = 0;
  while (off >= kJacobiTolerance) {
    if (sweep == kJacobiSweepCap) throw NoConvergence(kJacobiSweepCap, off);
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) rotate(m, v, p, q);
    ++sweep;
    off = off_diagonal_norm(m);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return m(a, a) > m(b, b); });

  Spectrum spec;
  spec.eigenvalues.reserve(n);
  spec.eigenvectors.reserve(n);
  for (std::size_t idx : order) {
    spec.eigenvalues.push_back(m(idx, idx));
    Vector vec(n);
    for (std::size_t k = 0; k < n; ++k) vec[k] = v(k, idx);
    auto lead = std::find_if(vec.begin(), vec.end(), [](double x) { return std::abs(x) > 1e-12; });
    if (lead != vec.end() && *lead < 0.0)
      for (double& x : vec) x = -x;
    spec.eigenvectors.push_back(std::move(vec));
  }
  return spec;
}

Spectrum eigendecompose_symmetric(const WeightedAdjacency& a) { return eigendecompose_symmetric(a.weights()); }

Spectrum spectrum_from_values(std::vector<double> eigenvalues) {
  std::sort(eigenvalues.begin(), eigenvalues.end(), std::greater<>());
  return Spectrum{std::move(eigenvalues), {}};
}

double rho_ess(const Spectrum& spec) {
  const auto& ev = spec.eigenvalues;
  if (ev.empty()) throw BadSpectrum("empty spectrum");
  const bool all_ones = std::all_of(ev.begin(), ev.end(), [](double l) { return std::abs(l - 1.0) <= 1e-10; });
  if (all_ones) return 0.0;
  if (ev.size() >= 2 && ev[1] > 1.0 - 1e-10)
    throw DominantNotSimple("lambda_2 = 1 within 1e-10: the dominant eigenvalue is not simple (reducible network?)");
  double rho = 0.0;
  for (std::size_t i = 1; i < ev.size(); ++i) rho = std::max(rho, std::abs(ev[i]));
  return rho;
}

double verify_augmented_eigenpair(const WeightedAdjacency& a, double gamma, double lambda, Complex lambda_hat,
                                  std::span<const double> v) {
  (void)lambda;  // the residual depends on (lambda_hat, v) only; lambda names the source pair
  const std::size_t n = a.n();
  if (v.size() != n) throw DimensionMismatch(n, v.size());
  const AugmentedMatrix aug = build_augmented(a, gamma);
  const Matrix& m = aug.matrix();

  std::vector<Complex> vh(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    vh[i] = lambda_hat * v[i];
    vh[n + i] = v[i];
  }
  double residual = 0.0;
  for (std::size_t i = 0; i < 2 * n; ++i) {
    Complex acc = 0.0;
    for (std::size_t j = 0; j < 2 * n; ++j) acc += m(i, j) * vh[j];
    residual = std::max(residual, std::abs(acc - lambda_hat * vh[i]));
  }
  return residual;
}

}  // namespace consensus
