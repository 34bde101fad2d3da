#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>

#include "consensus/matrix.hpp"

namespace consensus {

inline constexpr double kRowSumTolerance = 1e-12;
inline constexpr double kSymmetryTolerance = 1e-12;

/// Row-stochastic, non-negative n x n weight matrix (n >= 2). Entry (i, j) is
/// the weight agent i assigns to agent j. Only obtainable through validate(),
/// so every instance satisfies those invariants; immutable afterwards.
class WeightedAdjacency {
public:
  std::size_t n() const { return weights_.rows(); }
  const Matrix& weights() const { return weights_; }
  double operator()(std::size_t i, std::size_t j) const { return weights_(i, j); }

  bool operator==(const WeightedAdjacency&) const = default;

  friend WeightedAdjacency validate(Matrix weights);

private:
  explicit WeightedAdjacency(Matrix w) : weights_(std::move(w)) {}
  Matrix weights_;
};

/// Checks squareness, n >= 2, non-negativity and unit row sums (|sum - 1| <= 1e-12).
/// Throws NotSquare, NegativeWeight or RowSumViolation.
WeightedAdjacency validate(Matrix weights);

struct StructureReport {
  bool symmetric = false;
  bool irreducible = false;
  bool primitive = false;
  /// Smallest k with A^k entrywise positive; set iff primitive.
  std::optional<std::size_t> witness_k;
};

/// Symmetry is checked on values; irreducibility and primitivity on the
/// boolean sparsity pattern. Primitivity search is capped at (n-1)^2 + 1.
StructureReport analyze_structure(const WeightedAdjacency& a);

bool is_symmetric(const Matrix& m, double tol = kSymmetryTolerance);

/// Circulant ring on n >= 3 nodes: self weight `self_loop`, (1 - self_loop)/2
/// to each neighbour. Throws BadParameter for n < 3 or self_loop outside [0, 1).
WeightedAdjacency make_ring(std::size_t n, double self_loop = 0.0);

/// Plain-text format: first line n, then n lines of n whitespace-separated reals.
WeightedAdjacency read_matrix(std::istream& in);
WeightedAdjacency read_matrix(const std::filesystem::path& path);
void write_matrix(const WeightedAdjacency& a, std::ostream& out);
void write_matrix(const WeightedAdjacency& a, const std::filesystem::path& path);

}  // namespace consensus
