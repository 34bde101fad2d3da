#include "consensus/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include "consensus/errors.hpp"
#include "consensus/format.hpp"
#include "consensus/golden_section.hpp"

namespace consensus {

namespace {

constexpr double kBoundaryTolerance = 1e-12;

void require_dominant_one(const Spectrum& spec) {
  if (spec.n() == 0) throw BadSpectrum("empty spectrum");
  if (std::abs(spec.largest() - 1.0) > 1e-8)
    throw AssumptionViolated("lambda_1 = " + fmt_real(spec.largest()) + " is not 1 (matrix not row-stochastic?)");
}

// Largest non-dominant modulus given a root map lambda -> pair. From lambda_1's
// pair only the root nearer to 1 is dropped.
template <typename Map>
double max_nondominant(const Spectrum& spec, Map map) {
  const auto& ev = spec.eigenvalues;
  const MappedPair top = map(ev.front());
  const bool plus_dominant = std::abs(top.lambda_plus - 1.0) <= std::abs(top.lambda_minus - 1.0);
  double worst = std::abs(plus_dominant ? top.lambda_minus : top.lambda_plus);
  for (std::size_t i = 1; i < ev.size(); ++i) worst = std::max(worst, map(ev[i]).max_modulus());
  return worst;
}

}  // namespace

MappedPair solve_monic_quadratic(double sum, double product) {
  const double disc = sum * sum - 4.0 * product;
  if (disc < 0.0) {
    const double re = sum / 2.0;
    const double im = std::sqrt(-disc) / 2.0;
    return {Complex(re, im), Complex(re, -im), disc};
  }
  const double root_disc = std::sqrt(disc);
  // q is the larger-magnitude root; the other follows from q * other = product.
  const double q = sum >= 0.0 ? (sum + root_disc) / 2.0 : (sum - root_disc) / 2.0;
  const double other = q == 0.0 ? 0.0 : product / q;
  if (sum >= 0.0) return {Complex(q, 0.0), Complex(other, 0.0), disc};
  return {Complex(other, 0.0), Complex(q, 0.0), disc};
}

double discriminant(double lambda, double gamma) {
  return gamma * gamma * lambda * lambda - 4.0 * (gamma - 1.0) * lambda;
}

MappedPair map_eigenvalue(double lambda, double gamma) {
  return solve_monic_quadratic(gamma * lambda, (gamma - 1.0) * lambda);
}

MappedPair map_eigenvalue_accelerated(double lambda, double beta) {
  return solve_monic_quadratic(beta * lambda, beta - 1.0);
}

double lambda_hat_max(double lambda, double gamma) { return map_eigenvalue(lambda, gamma).max_modulus(); }

double max_nondominant_modulus_mla(const Spectrum& spec, double gamma) {
  if (spec.n() == 0) throw BadSpectrum("empty spectrum");
  return max_nondominant(spec, [gamma](double l) { return map_eigenvalue(l, gamma); });
}

double max_nondominant_modulus_accelerated(const Spectrum& spec, double beta) {
  if (spec.n() == 0) throw BadSpectrum("empty spectrum");
  return max_nondominant(spec, [beta](double l) { return map_eigenvalue_accelerated(l, beta); });
}

ConvergenceVerdict check_mla_convergence(const Spectrum& spec, double gamma) {
  require_dominant_one(spec);
  ConvergenceVerdict v;
  const double lambda_n = spec.smallest();
  v.gamma_in_range = gamma > kBoundaryTolerance && gamma < 2.0 - kBoundaryTolerance;
  v.criterion_ii_value = 2.0 * gamma * lambda_n - lambda_n + 1.0;
  v.converges = v.gamma_in_range && v.criterion_ii_value > kBoundaryTolerance;
  v.limiting_eigenvalue_modulus = max_nondominant_modulus_mla(spec, gamma);
  return v;
}

double rho_ess_mla(const Spectrum& spec, double gamma) {
  const ConvergenceVerdict v = check_mla_convergence(spec, gamma);
  if (!v.converges)
    throw NotConvergent("MLA with gamma = " + fmt_real(gamma) + " does not converge (criterion value " +
                        fmt_real(v.criterion_ii_value) + ")");
  return v.limiting_eigenvalue_modulus;
}

bool roots_in_unit_disk_via_halfplane(Complex a, Complex b) {
  const Complex lead = 1.0 + a + b;
  if (lead == Complex(0.0, 0.0)) return false;
  const Complex mid = 2.0 * (1.0 - b);
  const Complex constant = b - a + 1.0;
  const Complex root_disc = std::sqrt(mid * mid - 4.0 * lead * constant);
  const Complex s1 = (-mid + root_disc) / (2.0 * lead);
  const Complex s2 = (-mid - root_disc) / (2.0 * lead);
  return s1.real() < 0.0 && s2.real() < 0.0;
}

double consensus_value(const WeightedAdjacency& a, const Spectrum& spec, std::span<const double> x0) {
  if (x0.size() != a.n()) throw DimensionMismatch(a.n(), x0.size());
  if (!is_symmetric(a.weights())) throw AssumptionViolated("consensus_value requires a symmetric network");
  if (spec.n() != a.n() || spec.eigenvectors.size() != a.n())
    throw BadSpectrum("spectrum does not match the network or lacks eigenvectors");
  require_dominant_one(spec);
  if (spec.n() >= 2 && spec.second() > 1.0 - 1e-10)
    throw AssumptionViolated("dominant eigenvalue 1 is not simple; no unique consensus value");

  const Vector& v1 = spec.eigenvectors.front();
  const double total = std::accumulate(v1.begin(), v1.end(), 0.0);
  double value = 0.0;
  for (std::size_t i = 0; i < x0.size(); ++i) value += v1[i] / total * x0[i];
  return value;
}

double mla_optimal_rate(double rho) { return std::sqrt(1.0 + rho) - 1.0; }

double accelerated_optimal_rate(double rho) { return rho / (1.0 + std::sqrt(1.0 - rho * rho)); }

OptimalGamma optimal_gamma(const Spectrum& spec) {
  require_dominant_one(spec);
  const double lambda_n = spec.smallest();
  if (lambda_n >= 0.0) throw BadSpectrum("optimal gamma needs lambda_n < 0, got " + fmt_real(lambda_n));
  const double rho = rho_ess(spec);
  if (!(rho > 0.0 && rho < 1.0)) throw BadSpectrum("optimal gamma needs rho_ess in (0, 1), got " + fmt_real(rho));

  OptimalGamma out;
  out.gamma = 2.0 / rho * (std::sqrt(1.0 + rho) - 1.0);
  // gamma* sits exactly on D(lambda_n, gamma) = 0, where lambda_n's roots
  // merge. On the D > 0 side a rounding-level offset splits them by sqrt(D),
  // about 1e-8, so step to the neighbouring double with D <= 0, where the
  // common modulus sqrt((gamma - 1) lambda_n) is well conditioned.
  for (int i = 0; i < 64 && discriminant(lambda_n, out.gamma) > 0.0; ++i)
    out.gamma = std::nextafter(out.gamma, 0.0);
  out.hypotheses_met = spec.second() <= std::abs(lambda_n) / 3.0 && std::abs(lambda_n + rho) <= kBoundaryTolerance;
  out.rate = out.hypotheses_met ? mla_optimal_rate(rho) : rho_ess_mla(spec, out.gamma);
  return out;
}

OptimalBeta optimal_beta(const Spectrum& spec) {
  require_dominant_one(spec);
  const double rho = rho_ess(spec);
  if (!(rho > 0.0 && rho < 1.0)) throw BadSpectrum("optimal beta needs rho_ess in (0, 1), got " + fmt_real(rho));
  const auto objective = [&spec](double beta) { return max_nondominant_modulus_accelerated(spec, beta); };
  const ScalarMinimum best = golden_section_minimize(objective, 0.0, 2.0, 1e-10);
  return {best.x, accelerated_optimal_rate(rho), best.value};
}

std::optional<Improvement> improving_gamma_exists(const Spectrum& spec) {
  require_dominant_one(spec);
  const double rho = rho_ess(spec);
  if (rho >= 1.0) throw BadSpectrum("network is not primitive (rho_ess = 1)");
  if (rho == 0.0) return std::nullopt;
  const double lambda_2 = spec.second();
  const double lambda_n = spec.smallest();
  if (std::abs(lambda_2 + lambda_n) <= 1e-10)
    throw DegenerateSpectrum("lambda_2 + lambda_n = 0: no unique essential eigenvalue");

  const double lambda_ess = std::abs(lambda_2) >= std::abs(lambda_n) ? lambda_2 : lambda_n;
  const double sign = lambda_ess > 0.0 ? 1.0 : -1.0;
  for (double magnitude : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
    const double delta = sign * magnitude;
    const double gamma = 1.0 + delta;
    if (!check_mla_convergence(spec, gamma).converges) continue;
    const double rate = rho_ess_mla(spec, gamma);
    if (rate < rho - 1e-12) return Improvement{delta, rate};
  }
  return std::nullopt;
}

}  // namespace consensus
