#include "consensus/sim.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <ostream>
#include <thread>

#include "consensus/errors.hpp"
#include "consensus/format.hpp"

namespace consensus {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

void SimConfig::check() const {
  if (steps < 1) throw BadParameter("steps must be >= 1");
  if (runs < 1) throw BadParameter("runs must be >= 1");
  if (!(init_low < init_high)) throw BadParameter("init_low must be below init_high");
}

Vector initial_state(const SimConfig& cfg, std::size_t n, std::size_t run) {
  SplitMix64 rng(cfg.seed ^ static_cast<std::uint64_t>(run));
  Vector x(n);
  for (double& xi : x) xi = rng.uniform(cfg.init_low, cfg.init_high);
  return x;
}

namespace {

struct Envelope {
  std::vector<double> lo, hi;
  explicit Envelope(std::size_t len)
      : lo(len, std::numeric_limits<double>::infinity()), hi(len, -std::numeric_limits<double>::infinity()) {}
};

// Returns max |deviation| at this step.
double record(const Vector& x, Envelope& env, std::size_t k) {
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  double worst = 0.0;
  for (double xi : x) {
    const double d = xi - mean;
    env.lo[k] = std::min(env.lo[k], d);
    env.hi[k] = std::max(env.hi[k], d);
    worst = std::max(worst, std::abs(d));
  }
  return worst;
}

}  // namespace

TraceSummary run_batch(const WeightedAdjacency& a, const SimConfig& cfg, unsigned threads) {
  cfg.check();
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, cfg.runs));

  const std::size_t len = cfg.steps + 1;
  std::vector<Envelope> partial(threads, Envelope(len));
  std::vector<double> final_dev(cfg.runs, 0.0);

  auto work = [&](unsigned t) {
    Envelope& env = partial[t];
    for (std::size_t run = t; run < cfg.runs; run += threads) {
      AugmentedState state = AugmentedState::from_initial(initial_state(cfg, a.n(), run));
      double dev = record(state.current, env, 0);
      for (std::size_t k = 1; k < len; ++k) {
        advance(a, cfg.model, state);
        dev = record(state.current, env, k);
      }
      final_dev[run] = dev;
    }
  };

  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }

  // min/max are exact and commutative, so the merge order cannot change bits.
  TraceSummary out;
  out.env_min.assign(len, std::numeric_limits<double>::infinity());
  out.env_max.assign(len, -std::numeric_limits<double>::infinity());
  for (const Envelope& env : partial)
    for (std::size_t k = 0; k < len; ++k) {
      out.env_min[k] = std::min(out.env_min[k], env.lo[k]);
      out.env_max[k] = std::max(out.env_max[k], env.hi[k]);
    }
  out.final_max_abs_deviation = std::move(final_dev);
  return out;
}

void write_trace_csv(const TraceSummary& t, std::ostream& out) {
  out << "k,env_min,env_max\n";
  for (std::size_t k = 0; k < t.env_max.size(); ++k)
    out << k << ',' << fmt_real(t.env_min[k]) << ',' << fmt_real(t.env_max[k]) << '\n';
}

void write_trace_csv(const TraceSummary& t, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  write_trace_csv(t, out);
  if (!out) throw Error("write failed for " + path.string());
}

RateFit fit_rate(const WeightedAdjacency& a, const ModelParams& model, std::span<const double> x0, std::size_t steps) {
  if (x0.size() != a.n()) throw DimensionMismatch(a.n(), x0.size());
  if (!is_symmetric(a.weights())) throw NotSymmetric("fit_rate needs a symmetric network for the consensus value");
  const double x_inf = std::accumulate(x0.begin(), x0.end(), 0.0) / static_cast<double>(x0.size());
  const std::size_t k_first = (steps + 9) / 10;

  std::vector<double> ks, logs;
  AugmentedState state = AugmentedState::from_initial(x0);
  for (std::size_t k = 0; k <= steps; ++k) {
    if (k > 0) advance(a, model, state);
    if (k < k_first) continue;
    double sq = 0.0;
    for (double xi : state.current) sq += (xi - x_inf) * (xi - x_inf);
    const double norm = std::sqrt(sq);
    if (!(norm >= kRateFitFloor) || !std::isfinite(norm)) continue;
    ks.push_back(static_cast<double>(k));
    logs.push_back(std::log(norm));
  }
  if (ks.size() < kRateFitMinPoints) throw InsufficientData(ks.size(), kRateFitMinPoints);

  const double m = static_cast<double>(ks.size());
  const double k_mean = std::accumulate(ks.begin(), ks.end(), 0.0) / m;
  const double y_mean = std::accumulate(logs.begin(), logs.end(), 0.0) / m;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    sxy += (ks[i] - k_mean) * (logs[i] - y_mean);
    sxx += (ks[i] - k_mean) * (ks[i] - k_mean);
    syy += (logs[i] - y_mean) * (logs[i] - y_mean);
  }
  const double slope = sxy / sxx;

  RateFit fit;
  fit.fitted_rate = std::exp(slope);
  fit.r_squared = syy > 0.0 ? std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0) : 1.0;
  fit.k_start = static_cast<std::size_t>(ks.front());
  fit.k_end = static_cast<std::size_t>(ks.back());
  fit.points = ks.size();
  return fit;
}

WeightedAdjacency random_symmetric_stochastic(std::size_t n, std::uint64_t seed) {
  if (n < 2) throw BadParameter("random_symmetric_stochastic needs n >= 2");
  SplitMix64 rng(seed);

  // Pattern = ring cycle plus up to two random permutations, all symmetrised.
  // Every entry then lies on a permutation inside the pattern (total support),
  // which is what makes a doubly stochastic D W D scaling exist.
  std::vector<std::vector<bool>> pattern(n, std::vector<bool>(n, false));
  auto add_permutation = [&](const std::vector<std::size_t>& perm) {
    for (std::size_t i = 0; i < n; ++i) pattern[i][perm[i]] = pattern[perm[i]][i] = true;
  };
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = (i + 1) % n;
  add_permutation(perm);
  const auto extra = static_cast<std::size_t>(rng.next() % 3);
  for (std::size_t m = 0; m < extra; ++m) {
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (std::size_t i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.next() % (i + 1)]);
    add_permutation(perm);
  }

  Matrix w(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      if (pattern[i][j]) w(i, j) = w(j, i) = 0.05 + rng.uniform();

  // Symmetric Sinkhorn: row sums of D W D are d_i (W d)_i; the fixed point of
  // d <- sqrt(d / (W d)) makes them all 1.
  Vector d(n, 1.0);
  Matrix scaled(n, n);
  double residual = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 10000; ++it) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) scaled(i, j) = scaled(j, i) = d[i] * w(i, j) * d[j];
    residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += scaled(i, j);
      residual = std::max(residual, std::abs(s - 1.0));
    }
    if (residual <= kRowSumTolerance) return validate(scaled);
    const Vector wd = multiply(w, d);
    for (std::size_t i = 0; i < n; ++i) d[i] = std::sqrt(d[i] / wd[i]);
  }
  throw NormalizationFailed(residual);
}

}  // namespace consensus
