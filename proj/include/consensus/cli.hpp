#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "consensus/net.hpp"
#include "consensus/sim.hpp"

namespace consensus::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int { kOk = 0, kAnalysisFailure = 1, kUsageError = 2 };

/// Runs the command line `argv` (argv[0] is the program name) and returns the
/// process exit code. Regular output goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Figure presets. Each writes CSV files into `dir` and returns their paths.
struct FigureOptions {
  std::size_t steps = 100;
  std::size_t runs = 1000;
  std::uint64_t seed = 1;
};

/// Envelope traces on the periodic 4-ring: DeGroot, accelerated (beta = 1.2), MLA (gamma = 0.5).
std::vector<std::filesystem::path> write_fig2(const std::filesystem::path& dir, const FigureOptions& opt);
/// Envelope traces on the 4-ring with self-loops 0.1, each model at its optimal parameter.
std::vector<std::filesystem::path> write_fig6(const std::filesystem::path& dir, const FigureOptions& opt);
/// Lambda_hat_max over a 201 x 201 (lambda, gamma) grid plus the D = 0 locus.
std::vector<std::filesystem::path> write_contour(const std::filesystem::path& dir);

inline constexpr double kFig2Beta = 1.2;
inline constexpr double kFig2Gamma = 0.5;
inline constexpr double kFig6SelfLoop = 0.1;
inline constexpr std::size_t kContourPoints = 201;

}  // namespace consensus::cli
