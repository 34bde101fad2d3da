#pragma once

#include <complex>
#include <span>
#include <vector>

#include "consensus/matrix.hpp"
#include "consensus/net.hpp"

namespace consensus {

using Complex = std::complex<double>;

inline constexpr double kJacobiTolerance = 1e-14;
inline constexpr int kJacobiSweepCap = 100;

/// Real spectrum of a symmetric matrix: eigenvalues sorted descending with
/// orthonormal eigenvectors in matching order. Each eigenvector has its first
/// non-negligible component positive.
struct Spectrum {
  std::vector<double> eigenvalues;
  std::vector<Vector> eigenvectors;

  std::size_t n() const { return eigenvalues.size(); }
  double largest() const { return eigenvalues.front(); }
  double second() const { return eigenvalues.size() > 1 ? eigenvalues[1] : eigenvalues.front(); }
  double smallest() const { return eigenvalues.back(); }
};

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm drops below
/// 1e-14, at most 100 sweeps. Throws NotSymmetric or NoConvergence.
Spectrum eigendecompose_symmetric(const Matrix& m);
Spectrum eigendecompose_symmetric(const WeightedAdjacency& a);

/// Spectrum from eigenvalues alone (no eigenvectors); used where only the
/// values matter, e.g. closed-form analysis of a synthetic spectrum.
Spectrum spectrum_from_values(std::vector<double> eigenvalues);

/// Essential spectral radius: 0 for an all-ones spectrum, otherwise the
/// largest |lambda_i| for i >= 2. Throws DominantNotSimple when lambda_2 is
/// within 1e-10 of 1 on a spectrum that is not all ones.
double rho_ess(const Spectrum& spec);

/// Builds v_hat = [lambda_hat v; v] and returns ||A_hat v_hat - lambda_hat v_hat||_inf
/// with A_hat the explicit 2n x 2n MLA iteration matrix.
double verify_augmented_eigenpair(const WeightedAdjacency& a, double gamma, double lambda, Complex lambda_hat,
                                  std::span<const double> v);

}  // namespace consensus
