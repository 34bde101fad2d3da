#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "consensus/dynamics.hpp"
#include "consensus/net.hpp"

namespace consensus {

/// SplitMix64 (Steele, Lea & Flood 2014): state advances by the constant
/// 0x9E3779B97F4A7C15 and each output is the finaliser
///   z ^= z >> 30; z *= 0xBF58476D1CE4E5B9;
///   z ^= z >> 27; z *= 0x94D049BB133111EB;
///   z ^= z >> 31;
/// applied to the new state. Output k therefore depends only on (seed, k).
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
  std::uint64_t state_;
};

struct SimConfig {
  ModelParams model = ModelParams::degroot();
  std::size_t steps = 100;
  std::size_t runs = 1000;
  std::uint64_t seed = 0;
  double init_low = 0.0;
  double init_high = 1.0;

  /// Throws BadParameter unless steps >= 1, runs >= 1 and init_low < init_high.
  void check() const;
};

/// Initial state of run `run`: n uniform draws on [init_low, init_high) from
/// the stream seeded with seed ^ run.
Vector initial_state(const SimConfig& cfg, std::size_t n, std::size_t run);

/// Envelope of deviations x_i(k) - mean_j x_j(k) over all runs and agents,
/// for k = 0..steps (steps + 1 entries).
struct TraceSummary {
  std::vector<double> env_min;
  std::vector<double> env_max;
  std::vector<double> final_max_abs_deviation;  ///< one entry per run

  std::size_t steps() const { return env_max.empty() ? 0 : env_max.size() - 1; }
  double width(std::size_t k) const { return env_max[k] - env_min[k]; }
};

/// Simulates cfg.runs independent trajectories with x(-1) = x(0). Runs are
/// spread across threads; the result is bit-identical for any thread count.
TraceSummary run_batch(const WeightedAdjacency& a, const SimConfig& cfg, unsigned threads = 0);

/// CSV with header `k,env_min,env_max`, one row per step.
void write_trace_csv(const TraceSummary& t, std::ostream& out);
void write_trace_csv(const TraceSummary& t, const std::filesystem::path& path);

struct RateFit {
  double fitted_rate = 0.0;
  double r_squared = 0.0;
  std::size_t k_start = 0;
  std::size_t k_end = 0;
  std::size_t points = 0;
};

inline constexpr double kRateFitFloor = 1e-13;
inline constexpr std::size_t kRateFitMinPoints = 10;

/// Least-squares slope of log ||x(k) - x_inf 1||_2 against k over k >=
/// ceil(steps / 10), skipping points below 1e-13; fitted_rate = exp(slope).
/// x_inf is the average of x0, the consensus value for a symmetric network.
/// Throws NotSymmetric for asymmetric A and InsufficientData for fewer than 10 points.
RateFit fit_rate(const WeightedAdjacency& a, const ModelParams& model, std::span<const double> x0, std::size_t steps);

/// Random symmetric, row-stochastic, irreducible matrix: a positive ring
/// backbone plus random chords and self-loops, scaled by symmetric Sinkhorn
/// iteration (D W D) until every row sum is within 1e-12 of 1.
/// Throws BadParameter for n < 2 and NormalizationFailed after 10^4 iterations.
WeightedAdjacency random_symmetric_stochastic(std::size_t n, std::uint64_t seed);

}  // namespace consensus
