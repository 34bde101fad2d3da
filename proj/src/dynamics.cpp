#include "consensus/dynamics.hpp"

#include <cmath>

#include "consensus/errors.hpp"
#include "consensus/format.hpp"

namespace consensus {

namespace {

double finite_param(double p, const char* name) {
  if (!std::isfinite(p)) throw BadParameter(std::string(name) + " must be finite");
  return p;
}

void check_len(const WeightedAdjacency& a, std::span<const double> v) {
  if (v.size() != a.n()) throw DimensionMismatch(a.n(), v.size());
}

}  // namespace

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::DeGroot:
      return "degroot";
    case ModelKind::Accelerated:
      return "accelerated";
    case ModelKind::MLA:
      return "mla";
  }
  return "?";
}

ModelKind parse_model_kind(std::string_view name) {
  if (name == "degroot") return ModelKind::DeGroot;
  if (name == "accelerated") return ModelKind::Accelerated;
  if (name == "mla") return ModelKind::MLA;
  throw BadParameter("unknown model '" + std::string(name) + "' (expected degroot, accelerated or mla)");
}

ModelParams ModelParams::accelerated(double beta) { return {ModelKind::Accelerated, finite_param(beta, "beta")}; }
ModelParams ModelParams::mla(double gamma) { return {ModelKind::MLA, finite_param(gamma, "gamma")}; }

Vector step_degroot(const WeightedAdjacency& a, std::span<const double> x) { return multiply(a.weights(), x); }

Vector step_accelerated(const WeightedAdjacency& a, double beta, std::span<const double> x,
                        std::span<const double> x_prev) {
  check_len(a, x_prev);
  Vector next = multiply(a.weights(), x);
  for (std::size_t i = 0; i < next.size(); ++i) next[i] = beta * next[i] + (1.0 - beta) * x_prev[i];
  return next;
}

Vector step_mla(const WeightedAdjacency& a, double gamma, std::span<const double> x, std::span<const double> x_prev) {
  Vector next = multiply(a.weights(), x);
  const Vector prev_avg = multiply(a.weights(), x_prev);
  for (std::size_t i = 0; i < next.size(); ++i) next[i] = gamma * next[i] + (1.0 - gamma) * prev_avg[i];
  return next;
}

AugmentedState AugmentedState::from_initial(std::span<const double> x0) {
  return {Vector(x0.begin(), x0.end()), Vector(x0.begin(), x0.end()), 0};
}

void advance(const WeightedAdjacency& a, const ModelParams& model, AugmentedState& s) {
  Vector next;
  switch (model.kind()) {
    case ModelKind::DeGroot:
      next = step_degroot(a, s.current);
      break;
    case ModelKind::Accelerated:
      next = step_accelerated(a, model.param(), s.current, s.previous);
      break;
    case ModelKind::MLA:
      next = step_mla(a, model.param(), s.current, s.previous);
      break;
  }
  s.previous = std::move(s.current);
  s.current = std::move(next);
  ++s.k;
}

AugmentedMatrix build_augmented(const WeightedAdjacency& a, double gamma) {
  const std::size_t n = a.n();
  Matrix m(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      m(i, j) = gamma * a(i, j);
      m(i, n + j) = (1.0 - gamma) * a(i, j);
    }
    m(n + i, i) = 1.0;
  }
  return AugmentedMatrix(std::move(m));
}

AugmentedState AugmentedMatrix::apply(const AugmentedState& s) const {
  const std::size_t n = this->n();
  if (s.current.size() != n) throw DimensionMismatch(n, s.current.size());
  if (s.previous.size() != n) throw DimensionMismatch(n, s.previous.size());
  Vector stacked(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    stacked[i] = s.current[i];
    stacked[n + i] = s.previous[i];
  }
  const Vector out = multiply(m_, stacked);
  return {Vector(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(n)),
          Vector(out.begin() + static_cast<std::ptrdiff_t>(n), out.end()), s.k + 1};
}

}  // namespace consensus
