#pragma once

#include <optional>
#include <span>

#include "consensus/net.hpp"
#include "consensus/spectral.hpp"

namespace consensus {

/// Roots of a monic quadratic z^2 - s z + p = 0 together with its
/// discriminant s^2 - 4p. When the discriminant is negative the roots form a
/// conjugate pair with `lambda_plus` the one of positive imaginary part.
struct MappedPair {
  Complex lambda_plus;
  Complex lambda_minus;
  double discriminant;

  double max_modulus() const { return std::max(std::abs(lambda_plus), std::abs(lambda_minus)); }
};

/// Roots of z^2 - sum z + product = 0. The larger-magnitude real root comes
/// from the quadratic formula, the other from product / larger.
MappedPair solve_monic_quadratic(double sum, double product);

/// D(lambda, gamma) = gamma^2 lambda^2 - 4 (gamma - 1) lambda.
double discriminant(double lambda, double gamma);

/// The pair of MLA eigenvalues lambda_hat induced by an eigenvalue lambda of A:
/// roots of lambda_hat^2 - gamma lambda lambda_hat + (gamma - 1) lambda = 0.
MappedPair map_eigenvalue(double lambda, double gamma);

/// Accelerated-model counterpart: roots of mu^2 - beta lambda mu + (beta - 1) = 0.
MappedPair map_eigenvalue_accelerated(double lambda, double beta);

/// Max(|lambda_hat_+|, |lambda_hat_-|) at a single (lambda, gamma).
double lambda_hat_max(double lambda, double gamma);

struct ConvergenceVerdict {
  bool converges = false;
  bool gamma_in_range = false;
  double criterion_ii_value = 0.0;  ///< 2 gamma lambda_n - lambda_n + 1
  double limiting_eigenvalue_modulus = 0.0;
};

/// Analytic semi-convergence test for MLA on a symmetric irreducible network:
/// gamma in (0, 2) and 2 gamma lambda_n - lambda_n + 1 > 0, both strict with
/// values within 1e-12 of a boundary treated as failing. Also reports the
/// brute-force largest non-dominant mapped modulus.
/// Throws AssumptionViolated if lambda_1 differs from 1 by more than 1e-8.
ConvergenceVerdict check_mla_convergence(const Spectrum& spec, double gamma);

/// Largest modulus over all 2n mapped MLA eigenvalues except the single root
/// closest to 1 from lambda_1's pair. No convergence precondition.
double max_nondominant_modulus_mla(const Spectrum& spec, double gamma);

/// Same for the accelerated model with parameter beta. This is rho_ess(A_beta)
/// whenever the model converges.
double max_nondominant_modulus_accelerated(const Spectrum& spec, double beta);

/// Essential spectral radius of the MLA iteration matrix.
/// Throws NotConvergent if gamma fails the convergence criteria.
double rho_ess_mla(const Spectrum& spec, double gamma);

/// Ren-Cao test: do both roots of z^2 + a z + b lie strictly inside the unit
/// disk? Evaluated through the bilinear transform to
/// (1 + a + b) s^2 + 2 (1 - b) s + (b - a + 1) and a left-half-plane check on
/// its roots. A vanishing leading coefficient (root at z = 1) yields false.
bool roots_in_unit_disk_via_halfplane(Complex a, Complex b);

/// Consensus value w1^T x0 where w1 is the dominant eigenvector scaled to sum
/// to 1. Requires eigenvectors in `spec`.
/// Throws AssumptionViolated if lambda_1 is not simple, DimensionMismatch on size.
double consensus_value(const WeightedAdjacency& a, const Spectrum& spec, std::span<const double> x0);

/// sqrt(1 + rho) - 1
double mla_optimal_rate(double rho);
/// rho / (1 + sqrt(1 - rho^2))
double accelerated_optimal_rate(double rho);

struct OptimalGamma {
  double gamma;
  double rate;
  /// lambda_n < 0, lambda_2 <= |lambda_n| / 3 and lambda_n = -rho_ess. When
  /// false, `rate` is the exhaustive rho_ess_mla at `gamma`, not the closed form.
  bool hypotheses_met;
};

/// gamma* = 2 (sqrt(1 + rho) - 1) / rho. Throws BadSpectrum if lambda_n >= 0
/// or rho_ess outside (0, 1).
OptimalGamma optimal_gamma(const Spectrum& spec);

struct OptimalBeta {
  double beta;
  double rate;           ///< closed form rho / (1 + sqrt(1 - rho^2))
  double achieved_rate;  ///< numeric minimum found at `beta`
};

/// Minimises max_nondominant_modulus_accelerated over beta in (0, 2) by
/// golden-section search (tolerance 1e-10). Throws BadSpectrum if rho_ess is
/// outside (0, 1).
OptimalBeta optimal_beta(const Spectrum& spec);

struct Improvement {
  double delta;
  double improved_rate;
};

/// Looks for gamma = 1 + delta that beats DeGroot, trying delta magnitudes
/// 1e-1 down to 1e-6 with the sign of the essential eigenvalue. Returns
/// nullopt when no candidate improves (always the case for rho_ess = 0).
/// Throws DegenerateSpectrum if |lambda_2 + lambda_n| <= 1e-10, BadSpectrum if rho_ess >= 1.
std::optional<Improvement> improving_gamma_exists(const Spectrum& spec);

}  // namespace consensus
