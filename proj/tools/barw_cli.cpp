// barw: exact and Monte Carlo experiments for the mean-field branching-
// annihilating random walk. See README.md for the subcommands.

#include <charconv>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "barw/errors.hpp"
#include "barw/experiments.hpp"

namespace {

enum ExitCode { kOk = 0, kInternal = 1, kInvalidConfig = 2, kSolverFailure = 3, kTruncated = 4 };

std::vector<int> parse_n_list(const std::string& text) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    int v = 0;
    const char* first = text.data() + pos;
    const char* last = text.data() + comma;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (first == last || ec != std::errc{} || ptr != last)
      throw barw::DomainError("--n: bad integer list '" + text + "'");
    out.push_back(v);
    pos = comma + 1;
  }
  return out;
}

struct RawFlags {
  std::string n = "1200";
  std::string mode;
  std::string out = ".";
  std::string cache;
};

void add_common_flags(CLI::App& sub, barw::ExperimentConfig& cfg, RawFlags& raw) {
  sub.add_option("--lambda", cfg.lambda, "offspring mean, > 1")->capture_default_str();
  sub.add_option("--n", raw.n, "number of sites; comma list for uncond-time")
      ->capture_default_str();
  sub.add_option("--epsilon", cfg.epsilon, "level parameter in (0, 1)")->capture_default_str();
  sub.add_option("--delta", cfg.delta, "occupation band lower edge, as a fraction of n");
  sub.add_option("--x0", cfg.x0, "starting count");
  sub.add_option("--u", cfg.u, "custom upper threshold");
  sub.add_option("--mode", raw.mode, "threshold mode")
      ->check(CLI::IsMember({"low", "window", "custom"}));
  sub.add_option("--trials", cfg.trials, "Monte Carlo trials");
  sub.add_option("--seed", cfg.seed, "master seed (required for stochastic runs)");
  sub.add_option("--graph", cfg.graph, "graph file or complete:<n>[:<0|1>]");
  sub.add_option("--out", raw.out, "output directory")->capture_default_str();
  sub.add_option("--cache", raw.cache, "hitting-profile cache directory");
  sub.add_option("--workers", cfg.workers, "worker threads, 0 = all cores")
      ->capture_default_str();
}

const char* describe(const std::string& name) {
  if (name == "profile") return "hitting profile phi -> phi.csv";
  if (name == "figure1") return "log10 h over the window level -> logh.csv";
  if (name == "figure2") return "tilted transition matrix -> kernel.csv";
  if (name == "cond-time") return "conditional expected extinction time -> t.csv";
  if (name == "uncond-time") return "unconditional E[T0] over an n sweep -> T.csv";
  if (name == "occupation") return "conditional occupation time above delta n -> h_occ.csv";
  if (name == "mc-hitting") return "Monte Carlo estimate of phi(x0) -> est.csv";
  if (name == "mc-cond-path") return "Monte Carlo conditioned path length -> est.csv";
  if (name == "equivalence") return "particle vs count chain one-step TV -> tv.csv";
  if (name == "bounds-report") return "analytic bound checks -> report.txt";
  return "";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"barw: metastability experiments for the mean-field branching-annihilating walk"};
  app.require_subcommand(1);
  barw::ExperimentConfig cfg;
  RawFlags raw;
  for (const auto& name : barw::experiment_names()) {
    auto* sub = app.add_subcommand(name, describe(name));
    add_common_flags(*sub, cfg, raw);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kInvalidConfig;
  }

  try {
    cfg.experiment = app.get_subcommands().front()->get_name();
    cfg.n = parse_n_list(raw.n);
    if (!raw.mode.empty()) cfg.mode = barw::parse_level_mode(raw.mode);
    cfg.out_dir = raw.out;
    if (!raw.cache.empty()) cfg.cache_dir = raw.cache;

    const auto result = barw::run_experiment(cfg);
    for (const auto& f : result.files) std::cout << f.string() << '\n';
    return kOk;
  } catch (const barw::DomainError& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return kInvalidConfig;
  } catch (const barw::CacheError& e) {
    std::cerr << "cache: " << e.what() << '\n';
    return kInvalidConfig;
  } catch (const barw::TruncationError& e) {
    std::cerr << "simulation truncated: " << e.what() << '\n';
    return kTruncated;
  } catch (const barw::SolverError& e) {
    std::cerr << "solver failure: " << e.what() << " (residual " << e.residual() << ")\n";
    return kSolverFailure;
  } catch (const barw::InconsistencyError& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return kSolverFailure;
  } catch (const barw::OverflowError& e) {
    std::cerr << "solver failure: " << e.what() << " at state " << e.state() << '\n';
    return kSolverFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInternal;
  }
}
