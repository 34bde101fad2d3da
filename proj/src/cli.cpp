#include "consensus/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <string>

#include "consensus/analysis.hpp"
#include "consensus/errors.hpp"
#include "consensus/format.hpp"
#include "consensus/spectral.hpp"

namespace consensus::cli {

namespace {

// Where the matrix comes from: a file or the ring generator.
struct Source {
  std::string input;
  std::size_t ring = 0;
  double self_loop = 0.0;

  void attach(CLI::App& sub) {
    auto* in = sub.add_option("-i,--input", input, "matrix file (first line n, then n rows)");
    auto* r = sub.add_option("--ring", ring, "generate an n-node ring instead of reading a file")
                  ->check(CLI::Range(std::size_t{3}, std::size_t{1} << 20));
    auto* s = sub.add_option("--self-loop", self_loop, "self weight of each ring node, in [0, 1)");
    in->excludes(r);
    s->needs(r);
  }

  WeightedAdjacency load() const {
    if (!input.empty()) return read_matrix(std::filesystem::path(input));
    if (ring != 0) return make_ring(ring, self_loop);
    throw BadParameter("one of --input or --ring is required");
  }
};

// Prints `key=value` lines in porcelain mode and aligned `key: value` lines otherwise.
class Report {
public:
  Report(std::ostream& out, bool porcelain) : out_(out), porcelain_(porcelain) {}

  void put(const std::string& key, const std::string& value) {
    if (porcelain_) out_ << key << '=' << value << '\n';
    else out_ << key << ": " << value << '\n';
  }
  void put(const std::string& key, double value) { put(key, porcelain_ ? fmt_real(value) : fmt_real(value, 10)); }
  void put(const std::string& key, bool value) {
    put(key, std::string(porcelain_ ? (value ? "true" : "false") : (value ? "yes" : "no")));
  }
  void put(const std::string& key, std::size_t value) { put(key, std::to_string(value)); }

  void put_list(const std::string& key, const std::vector<double>& values) {
    std::string joined;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) joined += ',';
      joined += porcelain_ ? fmt_real(values[i]) : fmt_real(values[i], 10);
    }
    put(key, joined);
  }

private:
  std::ostream& out_;
  bool porcelain_;
};

int cmd_validate(const Source& src, bool porcelain, std::ostream& out) {
  const WeightedAdjacency a = src.load();
  const StructureReport s = analyze_structure(a);
  Report r(out, porcelain);
  r.put("n", a.n());
  r.put("row_stochastic", true);
  r.put("symmetric", s.symmetric);
  r.put("irreducible", s.irreducible);
  r.put("primitive", s.primitive);
  if (s.witness_k) r.put("primitive_witness_k", *s.witness_k);
  return kOk;
}

int cmd_spectrum(const Source& src, const std::string& out_path, std::ostream& out) {
  const Spectrum spec = eigendecompose_symmetric(src.load());
  auto emit = [&](std::ostream& os) {
    os << "index,eigenvalue\n";
    for (std::size_t i = 0; i < spec.n(); ++i) os << i + 1 << ',' << fmt_real(spec.eigenvalues[i]) << '\n';
  };
  if (out_path.empty()) {
    emit(out);
  } else {
    std::ofstream f(out_path);
    if (!f) throw Error("cannot write " + out_path);
    emit(f);
  }
  return kOk;
}

WeightedAdjacency load_connected_symmetric(const Source& src) {
  WeightedAdjacency a = src.load();
  const StructureReport s = analyze_structure(a);
  if (!s.symmetric) throw AssumptionViolated("network is not symmetric");
  if (!s.irreducible) throw AssumptionViolated("network is not irreducible (disconnected)");
  return a;
}

int cmd_analyze(const Source& src, std::optional<double> gamma, bool porcelain, std::ostream& out) {
  const WeightedAdjacency a = load_connected_symmetric(src);
  const Spectrum spec = eigendecompose_symmetric(a);
  const double rho = rho_ess(spec);

  Report r(out, porcelain);
  r.put("n", a.n());
  r.put_list("eigenvalues", spec.eigenvalues);
  r.put("rho_ess", rho);
  r.put("degroot_rate", rho);

  try {
    const OptimalGamma og = optimal_gamma(spec);
    r.put("gamma_star", og.gamma);
    r.put("mla_rate", og.rate);
    r.put("hypotheses_met", og.hypotheses_met);
  } catch (const BadSpectrum& e) {
    r.put("gamma_star", std::string("NA"));
    r.put("gamma_star_reason", std::string(e.what()));
  }
  try {
    const OptimalBeta ob = optimal_beta(spec);
    r.put("beta_star", ob.beta);
    r.put("accelerated_rate", ob.rate);
    r.put("accelerated_rate_achieved", ob.achieved_rate);
  } catch (const BadSpectrum& e) {
    r.put("beta_star", std::string("NA"));
    r.put("beta_star_reason", std::string(e.what()));
  }
  if (rho > 0.0 && rho < 1.0) {
    const double mla = mla_optimal_rate(rho);
    const double acc = accelerated_optimal_rate(rho);
    r.put("rate_chain", fmt_real(mla, 6) + " < " + fmt_real(acc, 6) + " < " + fmt_real(rho, 6));
    r.put("rate_chain_holds", mla < acc && acc < rho);
  }

  if (gamma) {
    const ConvergenceVerdict v = check_mla_convergence(spec, *gamma);
    r.put("gamma", *gamma);
    r.put("converges", v.converges);
    r.put("gamma_in_range", v.gamma_in_range);
    r.put("criterion_ii_value", v.criterion_ii_value);
    r.put("limiting_eigenvalue_modulus", v.limiting_eigenvalue_modulus);
    if (v.converges) r.put("mla_rate_at_gamma", v.limiting_eigenvalue_modulus);
  }
  return kOk;
}

// Spectral rate of `model` on a symmetric network, or nullopt if it does not converge.
std::optional<double> theoretical_rate(const Spectrum& spec, const ModelParams& model) {
  switch (model.kind()) {
    case ModelKind::DeGroot: {
      const double rho = rho_ess(spec);
      return rho < 1.0 - 1e-12 ? std::optional(rho) : std::nullopt;
    }
    case ModelKind::Accelerated: {
      const double rate = max_nondominant_modulus_accelerated(spec, model.param());
      return rate < 1.0 - 1e-12 ? std::optional(rate) : std::nullopt;
    }
    case ModelKind::MLA:
      if (!check_mla_convergence(spec, model.param()).converges) return std::nullopt;
      return rho_ess_mla(spec, model.param());
  }
  return std::nullopt;
}

struct SimulateArgs {
  std::string model = "degroot";
  std::optional<double> param;
  std::size_t steps = 100;
  std::size_t runs = 1000;
  std::uint64_t seed = 0;
  double init_low = 0.0;
  double init_high = 1.0;
  unsigned threads = 0;
  std::string out;
};

ModelParams make_model(const std::string& name, std::optional<double> param) {
  switch (parse_model_kind(name)) {
    case ModelKind::DeGroot:
      return ModelParams::degroot();
    case ModelKind::Accelerated:
      if (!param) throw BadParameter("--param (beta) is required for the accelerated model");
      return ModelParams::accelerated(*param);
    case ModelKind::MLA:
      if (!param) throw BadParameter("--param (gamma) is required for the mla model");
      return ModelParams::mla(*param);
  }
  throw BadParameter("unknown model");
}

int cmd_simulate(const Source& src, const SimulateArgs& args, bool porcelain, std::ostream& out) {
  const WeightedAdjacency a = src.load();
  SimConfig cfg;
  cfg.model = make_model(args.model, args.param);
  cfg.steps = args.steps;
  cfg.runs = args.runs;
  cfg.seed = args.seed;
  cfg.init_low = args.init_low;
  cfg.init_high = args.init_high;
  cfg.check();

  const TraceSummary trace = run_batch(a, cfg, args.threads);
  write_trace_csv(trace, std::filesystem::path(args.out));

  Report r(out, porcelain);
  r.put("csv", args.out);
  r.put("initial_width", trace.width(0));
  r.put("final_width", trace.width(trace.steps()));

  if (is_symmetric(a.weights()) && analyze_structure(a).irreducible) {
    const Spectrum spec = eigendecompose_symmetric(a);
    const std::optional<double> theory = theoretical_rate(spec, cfg.model);
    r.put("convergent", theory.has_value());
    if (theory) {
      r.put("theoretical_rate", *theory);
      try {
        const RateFit fit = fit_rate(a, cfg.model, initial_state(cfg, a.n(), 0), cfg.steps);
        r.put("fitted_rate", fit.fitted_rate);
        r.put("fit_r_squared", fit.r_squared);
        r.put("fit_window", std::to_string(fit.k_start) + "-" + std::to_string(fit.k_end));
      } catch (const InsufficientData& e) {
        r.put("fitted_rate", std::string("NA"));
        r.put("fit_reason", std::string(e.what()));
      }
    }
  }
  return kOk;
}

int cmd_figure(const std::string& name, const std::string& dir, const FigureOptions& opt, std::ostream& out) {
  std::vector<std::filesystem::path> files;
  if (name == "fig2") files = write_fig2(dir, opt);
  else if (name == "fig6") files = write_fig6(dir, opt);
  else files = write_contour(dir);
  for (const auto& f : files) out << f.string() << '\n';
  return kOk;
}

void prepare_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create " + dir.string() + ": " + ec.message());
}

std::vector<std::filesystem::path> write_envelopes(const std::filesystem::path& dir, const std::string& prefix,
                                                   const WeightedAdjacency& a, const FigureOptions& opt,
                                                   const std::vector<std::pair<std::string, ModelParams>>& models) {
  prepare_dir(dir);
  std::vector<std::filesystem::path> files;
  for (const auto& [label, model] : models) {
    SimConfig cfg;
    cfg.model = model;
    cfg.steps = opt.steps;
    cfg.runs = opt.runs;
    cfg.seed = opt.seed;
    const auto path = dir / (prefix + "_" + label + ".csv");
    write_trace_csv(run_batch(a, cfg), path);
    files.push_back(path);
  }
  return files;
}

}  // namespace

std::vector<std::filesystem::path> write_fig2(const std::filesystem::path& dir, const FigureOptions& opt) {
  return write_envelopes(dir, "fig2", make_ring(4, 0.0), opt,
                         {{"degroot", ModelParams::degroot()},
                          {"accelerated", ModelParams::accelerated(kFig2Beta)},
                          {"mla", ModelParams::mla(kFig2Gamma)}});
}

std::vector<std::filesystem::path> write_fig6(const std::filesystem::path& dir, const FigureOptions& opt) {
  const WeightedAdjacency a = make_ring(4, kFig6SelfLoop);
  const Spectrum spec = eigendecompose_symmetric(a);
  return write_envelopes(dir, "fig6", a, opt,
                         {{"degroot", ModelParams::degroot()},
                          {"accelerated", ModelParams::accelerated(optimal_beta(spec).beta)},
                          {"mla", ModelParams::mla(optimal_gamma(spec).gamma)}});
}

std::vector<std::filesystem::path> write_contour(const std::filesystem::path& dir) {
  prepare_dir(dir);
  const auto grid_path = dir / "contour_grid.csv";
  const auto locus_path = dir / "contour_locus.csv";
  const double last = static_cast<double>(kContourPoints - 1);
  {
    std::ofstream f(grid_path);
    if (!f) throw Error("cannot write " + grid_path.string());
    f << "lambda,gamma,value\n";
    for (std::size_t i = 0; i < kContourPoints; ++i) {
      const double lambda = -1.0 + 2.0 * static_cast<double>(i) / last;
      for (std::size_t j = 0; j < kContourPoints; ++j) {
        const double gamma = 2.0 * static_cast<double>(j) / last;
        f << fmt_real(lambda) << ',' << fmt_real(gamma) << ',' << fmt_real(lambda_hat_max(lambda, gamma)) << '\n';
      }
    }
    if (!f) throw Error("write failed for " + grid_path.string());
  }
  {
    // Nontrivial branch of D = 0: lambda = 4 (gamma - 1) / gamma^2, which
    // stays inside [-1, 1] for gamma >= 2 sqrt(2) - 2. The other branch is lambda = 0.
    std::ofstream f(locus_path);
    if (!f) throw Error("cannot write " + locus_path.string());
    f << "gamma,lambda\n";
    const double g_lo = 2.0 * std::sqrt(2.0) - 2.0;
    for (std::size_t j = 0; j < kContourPoints; ++j) {
      const double gamma = g_lo + (2.0 - g_lo) * static_cast<double>(j) / last;
      f << fmt_real(gamma) << ',' << fmt_real(4.0 * (gamma - 1.0) / (gamma * gamma)) << '\n';
    }
    if (!f) throw Error("write failed for " + locus_path.string());
  }
  return {grid_path, locus_path};
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Consensus dynamics: DeGroot, accelerated averaging and MLA models"};
  app.require_subcommand(1);
  app.fallthrough();
  bool porcelain = false;
  app.add_flag("--porcelain", porcelain, "machine-readable key=value output");

  Source src;
  auto* validate_cmd = app.add_subcommand("validate", "check row-stochasticity and report structure");
  src.attach(*validate_cmd);

  std::string spectrum_out;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "eigenvalues of a symmetric network as CSV");
  src.attach(*spectrum_cmd);
  spectrum_cmd->add_option("-o,--out", spectrum_out, "write the CSV here instead of stdout");

  std::optional<double> gamma;
  auto* analyze_cmd = app.add_subcommand("analyze", "spectral rates, optimal parameters, convergence verdict");
  src.attach(*analyze_cmd);
  analyze_cmd->add_option("--gamma", gamma, "MLA parameter to judge");

  SimulateArgs sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "seeded batch simulation, envelope CSV");
  src.attach(*simulate_cmd);
  simulate_cmd->add_option("--model", sim.model, "degroot | accelerated | mla")
      ->check(CLI::IsMember({"degroot", "accelerated", "mla"}));
  simulate_cmd->add_option("--param", sim.param, "beta (accelerated) or gamma (mla)");
  simulate_cmd->add_option("--steps", sim.steps, "number of steps")->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--runs", sim.runs, "number of random initial conditions")->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--seed", sim.seed, "base seed; run i uses seed ^ i");
  simulate_cmd->add_option("--init-low", sim.init_low, "lower end of the uniform initial range");
  simulate_cmd->add_option("--init-high", sim.init_high, "upper end of the uniform initial range");
  simulate_cmd->add_option("--threads", sim.threads, "worker threads (0 = hardware concurrency)");
  simulate_cmd->add_option("-o,--out", sim.out, "CSV output path")->required();

  std::string figure_name;
  std::string figure_dir = ".";
  FigureOptions fig;
  auto* figure_cmd = app.add_subcommand("figure", "emit figure data as CSV");
  figure_cmd->add_option("name", figure_name, "fig2 | fig6 | contour")
      ->required()
      ->check(CLI::IsMember({"fig2", "fig6", "contour"}));
  figure_cmd->add_option("-o,--out-dir", figure_dir, "output directory");
  figure_cmd->add_option("--steps", fig.steps, "steps per trace")->check(CLI::PositiveNumber);
  figure_cmd->add_option("--runs", fig.runs, "initial conditions per trace")->check(CLI::PositiveNumber);
  figure_cmd->add_option("--seed", fig.seed, "base seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (*validate_cmd) return cmd_validate(src, porcelain, out);
    if (*spectrum_cmd) return cmd_spectrum(src, spectrum_out, out);
    if (*analyze_cmd) return cmd_analyze(src, gamma, porcelain, out);
    if (*simulate_cmd) return cmd_simulate(src, sim, porcelain, out);
    if (*figure_cmd) return cmd_figure(figure_name, figure_dir, fig, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const BadParameter& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kAnalysisFailure;
  }
  return kUsageError;
}

}  // namespace consensus::cli
