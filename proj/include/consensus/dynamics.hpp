#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>

#include "consensus/matrix.hpp"
#include "consensus/net.hpp"

namespace consensus {

enum class ModelKind { DeGroot, Accelerated, MLA };

std::string_view to_string(ModelKind kind);
/// Accepts "degroot", "accelerated", "mla" (case-sensitive). Throws BadParameter.
ModelKind parse_model_kind(std::string_view name);

/// Which update rule to run and its scalar parameter: beta for Accelerated,
/// gamma for MLA, ignored for DeGroot. Any finite value is accepted; whether
/// it converges is for the analysis functions to judge.
class ModelParams {
public:
  static ModelParams degroot() { return {ModelKind::DeGroot, 1.0}; }
  static ModelParams accelerated(double beta);
  static ModelParams mla(double gamma);

  ModelKind kind() const { return kind_; }
  double param() const { return param_; }

  bool operator==(const ModelParams&) const = default;

private:
  ModelParams(ModelKind k, double p) : kind_(k), param_(p) {}
  ModelKind kind_;
  double param_;
};

/// x(k+1) = A x(k)
Vector step_degroot(const WeightedAdjacency& a, std::span<const double> x);

/// x(k+1) = beta A x(k) + (1 - beta) x(k-1)
Vector step_accelerated(const WeightedAdjacency& a, double beta, std::span<const double> x,
                        std::span<const double> x_prev);

/// x(k+1) = gamma A x(k) + (1 - gamma) A x(k-1)
Vector step_mla(const WeightedAdjacency& a, double gamma, std::span<const double> x, std::span<const double> x_prev);

/// [x(k); x(k-1)] together with the step counter k.
struct AugmentedState {
  Vector current;
  Vector previous;
  std::size_t k = 0;

  /// Starts from x(-1) = x(0) = x0.
  static AugmentedState from_initial(std::span<const double> x0);
};

/// Advances the state by one step of the given model.
void advance(const WeightedAdjacency& a, const ModelParams& model, AugmentedState& state);

/// The 2n x 2n MLA iteration matrix [gamma A, (1 - gamma) A; I, 0]. Only used
/// for verification; simulation runs on the two-vector form.
class AugmentedMatrix {
public:
  const Matrix& matrix() const { return m_; }
  std::size_t n() const { return m_.rows() / 2; }

  /// Applies the matrix to a stacked state; returns the next stacked state.
  AugmentedState apply(const AugmentedState& s) const;

  friend AugmentedMatrix build_augmented(const WeightedAdjacency& a, double gamma);

private:
  explicit AugmentedMatrix(Matrix m) : m_(std::move(m)) {}
  Matrix m_;
};

AugmentedMatrix build_augmented(const WeightedAdjacency& a, double gamma);

}  // namespace consensus
