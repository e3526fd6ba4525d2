#include "barw/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>

#include "barw/bounds.hpp"
#include "barw/csv.hpp"
#include "barw/dominance.hpp"
#include "barw/errors.hpp"
#include "barw/exact_solver.hpp"
#include "barw/graph.hpp"
#include "barw/profile_cache.hpp"
#include "barw/simulator.hpp"

namespace barw {

namespace {

using Rows = std::vector<std::vector<std::string>>;
using nlohmann::json;

struct Table {
  std::string file;
  std::vector<std::string> header;
  Rows rows;
};

// Everything an experiment produces, held in memory until validation and
// computation have both succeeded.
struct Output {
  std::vector<Table> tables;
  std::optional<std::string> report_text;
  json results = json::object();
};

std::string fmt(double v) { return format_real(v); }
std::string fmt(std::int64_t v) { return std::to_string(v); }
std::string fmt(int v) { return std::to_string(v); }

json real_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

int single_n(const ExperimentConfig& c) {
  if (c.n.size() != 1)
    throw DomainError("experiment '" + c.experiment + "' takes exactly one --n value");
  return c.n.front();
}

std::uint64_t require_seed(const ExperimentConfig& c) {
  if (!c.seed) throw DomainError("experiment '" + c.experiment + "' is stochastic and needs --seed");
  return *c.seed;
}

std::int64_t require_trials(const ExperimentConfig& c, std::int64_t fallback) {
  const std::int64_t t = c.trials.value_or(fallback);
  if (t < 2) throw DomainError("--trials must be at least 2");
  return t;
}

int require_x0(const ExperimentConfig& c) {
  if (!c.x0) throw DomainError("experiment '" + c.experiment + "' needs --x0");
  return *c.x0;
}

// --u alone implies custom mode; otherwise the experiment's default applies.
LevelSpec resolve_level(const ModelParams& params, const ExperimentConfig& c, LevelMode fallback) {
  const LevelMode mode = c.mode.value_or(c.u ? LevelMode::custom : fallback);
  if (mode != LevelMode::custom && c.u)
    throw DomainError("--u is only meaningful with --mode custom");
  return make_level(params, c.epsilon, mode, c.u);
}

LevelSpec fixed_window(const ModelParams& params, const ExperimentConfig& c) {
  if (c.u || (c.mode && *c.mode != LevelMode::window))
    throw DomainError("experiment '" + c.experiment + "' always uses the window level");
  return make_level(params, c.epsilon, LevelMode::window);
}

HittingProfile obtain_profile(const ModelParams& params, int u, const ExperimentConfig& c,
                              json& results) {
  if (!c.cache_dir) return hitting_profile(params, u);
  auto probe = cache_probe(*c.cache_dir, params.lambda(), params.n(), u);
  if (probe.status == CacheStatus::mismatch)
    throw CacheMismatchError("refusing cache file '" + probe.file.string() + "': " + probe.reason);
  if (probe.status == CacheStatus::hit) {
    results["cache"] = "hit";
    return std::move(*probe.profile);
  }
  HittingProfile profile = hitting_profile(params, u);
  cache_store(*c.cache_dir, profile);
  results["cache"] = "miss";
  return profile;
}

json constants_for(const ModelParams& params, double epsilon, std::optional<int> u) {
  const BoundSet b = make_bound_set(params.lambda(), params.n(), epsilon);
  json j;
  j["lambda"] = params.lambda();
  j["n"] = params.n();
  j["epsilon"] = epsilon;
  j["eq"] = equilibrium(params);
  j["u"] = u ? json(*u) : json(nullptr);
  j["q"] = b.q;
  j["q1"] = real_or_null(b.q1);
  j["q2"] = b.q2;
  j["theta"] = b.theta;
  j["kappa_n"] = b.kappa_n;
  return j;
}

void record_profile(json& results, const HittingProfile& p) {
  results["residual"] = p.residual;
  results["method"] = std::string(to_string(p.method));
}

Output run_profile(const ExperimentConfig& c, json& constants) {
  const ModelParams params(c.lambda, single_n(c));
  const LevelSpec level = resolve_level(params, c, LevelMode::window);
  constants = constants_for(params, c.epsilon, level.u);
  Output out;
  const HittingProfile p = obtain_profile(params, level.u, c, out.results);
  record_profile(out.results, p);
  Table t{"phi.csv", {"x", "log_phi_natural", "phi_if_representable"}, {}};
  for (int x = 0; x < level.u; ++x) {
    const double l = p.log(x);
    const double v = std::exp(l);
    t.rows.push_back({fmt(x), fmt(l), v >= std::numeric_limits<double>::min() ? fmt(v) : ""});
  }
  out.tables.push_back(std::move(t));
  return out;
}

Output run_figure1(const ExperimentConfig& c, json& constants) {
  const ModelParams params(c.lambda, single_n(c));
  const LevelSpec level = fixed_window(params, c);
  constants = constants_for(params, c.epsilon, level.u);
  Output out;
  const HittingProfile p = obtain_profile(params, level.u, c, out.results);
  record_profile(out.results, p);
  Table t{"logh.csv", {"x", "log10_h"}, {}};
  int increases = 0;
  for (int x = 0; x < level.u; ++x) {
    t.rows.push_back({fmt(x), fmt(p.log(x) / std::log(10.0))});
    if (x + 1 < level.u && p.log(x + 1) > p.log(x)) ++increases;
  }
  out.results["increasing_steps"] = increases;
  out.tables.push_back(std::move(t));
  return out;
}

Output run_figure2(const ExperimentConfig& c, json& constants) {
  const ModelParams params(c.lambda, single_n(c));
  const LevelSpec level = fixed_window(params, c);
  constants = constants_for(params, c.epsilon, level.u);
  Output out;
  const TiltedKernel k = tilted_kernel(obtain_profile(params, level.u, c, out.results));
  record_profile(out.results, k.source());
  Table t{"kernel.csv", {"x", "y", "p_phi"}, {}};
  for (int x = 1; x < level.u; ++x)
    for (int y = 0; y < level.u; ++y) t.rows.push_back({fmt(x), fmt(y), fmt(k(x, y))});
  out.tables.push_back(std::move(t));
  return out;
}

Output run_cond_time(const ExperimentConfig& c, json& constants) {
  const ModelParams params(c.lambda, single_n(c));
  const LevelSpec level = resolve_level(params, c, LevelMode::window);
  constants = constants_for(params, c.epsilon, level.u);
  Output out;
  const TiltedKernel k = tilted_kernel(obtain_profile(params, level.u, c, out.results));
  record_profile(out.results, k.source());
  const TimeProfile tp = conditional_expected_extinction(k);
  Table t{"t.csv", {"x", "t", "t_over_ln_1p_x"}, {}};
  double rmin = std::numeric_limits<double>::infinity();
  double rmax = -rmin;
  for (int x = 0; x < level.u; ++x) {
    const double tx = tp.values[static_cast<std::size_t>(x)];
    if (x == 0) {
      t.rows.push_back({fmt(x), fmt(tx), ""});
      continue;
    }
    const double r = tx / std::log1p(x);
    t.rows.push_back({fmt(x), fmt(tx), fmt(r)});
    if (x >= 2) {
      rmin = std::min(rmin, r);
      rmax = std::max(rmax, r);
    }
  }
  if (level.u > 2) {
    out.results["r_min"] = rmin;
    out.results["r_max"] = rmax;
    out.results["r_spread"] = rmax / rmin;
  }
  out.tables.push_back(std::move(t));
  return out;
}

Output run_uncond_time(const ExperimentConfig& c, json& constants) {
  if (c.n.empty()) throw DomainError("--n needs at least one value");
  std::vector<ModelParams> sweep;
  for (int n : c.n) {
    sweep.emplace_back(c.lambda, n);
    if (n > kUnconditionalMaxN)
      throw DomainError("uncond-time supports n <= " + std::to_string(kUnconditionalMaxN));
    if (c.x0 && (*c.x0 < 0 || *c.x0 > n)) throw DomainError("--x0 must lie in [0, n]");
  }
  constants = constants_for(sweep.front(), c.epsilon, std::nullopt);
  Output out;
  Table t{"T.csv", {"n", "x", "expected_T0", "ln_expected_T0"}, {}};
  json per_n = json::array();
  for (const auto& params : sweep) {
    const TimeProfile tp = unconditional_expected_extinction(params);
    for (int x = 0; x <= params.n(); ++x) {
      const double v = tp.values[static_cast<std::size_t>(x)];
      t.rows.push_back({fmt(params.n()), fmt(x), fmt(v), fmt(std::log(v))});
    }
    const int x = c.x0.value_or((params.n() + 1) / 2);
    const double v = tp.values[static_cast<std::size_t>(x)];
    per_n.push_back({{"n", params.n()}, {"x", x}, {"expected_T0", v}, {"ln_expected_T0", std::log(v)}});
  }
  out.results["at_x0"] = per_n;
  out.tables.push_back(std::move(t));
  return out;
}

Output run_occupation(const ExperimentConfig& c, json& constants) {
  const ModelParams params(c.lambda, single_n(c));
  if (!c.delta) throw DomainError("occupation needs --delta");
  const LevelSpec level = resolve_level(params, c, LevelMode::window);
  constants = constants_for(params, c.epsilon, level.u);
  Output out;
  const TiltedKernel k = tilted_kernel(obtain_profile(params, level.u, c, out.results));
  record_profile(out.results, k.source());
  const TimeProfile h = conditional_occupation_time(k, *c.delta);
  Table t{"h_occ.csv", {"x", "expected_occupation"}, {}};
  double hmax = 0.0;
  for (int x = 0; x < level.u; ++x) {
    const double v = h.values[static_cast<std::size_t>(x)];
    t.rows.push_back({fmt(x), fmt(v)});
    hmax = std::max(hmax, v);
  }
  out.results["delta"] = *c.delta;
  out.results["max_expected_occupation"] = hmax;
  out.tables.push_back(std::move(t));
  return out;
}

Table estimate_table(const EstimateWithCI& e) {
  return {"est.csv",
          {"estimate", "std_error", "trials", "seed"},
          {{fmt(e.mean), fmt(e.std_error), fmt(e.trials), std::to_string(e.seed)}}};
}

Output run_mc_hitting(const ExperimentConfig& c, json& constants) {
  const ModelParams params(c.lambda, single_n(c));
  const LevelSpec level = resolve_level(params, c, LevelMode::window);
  const int x0 = require_x0(c);
  const std::uint64_t seed = require_seed(c);
  const std::int64_t trials = require_trials(c, 100'000);
  if (x0 < 0 || x0 >= level.u) throw DomainError("--x0 must lie in [0, u)");
  constants = constants_for(params, c.epsilon, level.u);
  Output out;
  const EstimateWithCI e = estimate_hitting_prob(params, level.u, x0, trials, seed, c.workers);
  const HittingProfile p = obtain_profile(params, level.u, c, out.results);
  const double exact = std::exp(p.log(x0));
  out.results["estimate"] = e.mean;
  out.results["std_error"] = e.std_error;
  out.results["exact"] = exact;
  out.results["z_score"] = e.std_error > 0 ? (e.mean - exact) / e.std_error : 0.0;
  out.tables.push_back(estimate_table(e));
  return out;
}

Output run_mc_cond_path(const ExperimentConfig& c, json& constants) {
  const ModelParams params(c.lambda, single_n(c));
  const LevelSpec level = resolve_level(params, c, LevelMode::window);
  const int x0 = require_x0(c);
  const std::uint64_t seed = require_seed(c);
  const std::int64_t trials = require_trials(c, 100'000);
  if (x0 < 1 || x0 >= level.u) throw DomainError("--x0 must lie in [1, u)");
  constants = constants_for(params, c.epsilon, level.u);
  Output out;
  const TiltedKernel k = tilted_kernel(obtain_profile(params, level.u, c, out.results));
  const EstimateWithCI e = estimate_conditioned_length(k, x0, trials, seed, c.workers);
  const double exact = conditional_expected_extinction(k).values[static_cast<std::size_t>(x0)];
  out.results["estimate"] = e.mean;
  out.results["std_error"] = e.std_error;
  out.results["exact"] = exact;
  out.results["z_score"] = e.std_error > 0 ? (e.mean - exact) / e.std_error : 0.0;
  out.tables.push_back(estimate_table(e));
  return out;
}

Output run_equivalence(const ExperimentConfig& c, json& constants) {
  const int n = single_n(c);
  const ModelParams params(c.lambda, n);
  const GraphSpec graph = load_graph(c.graph.empty() ? "complete:" + std::to_string(n) : c.graph);
  if (graph.vertex_count != n)
    throw DomainError("graph has " + std::to_string(graph.vertex_count) + " vertices but --n is " +
                      std::to_string(n));
  const int x0 = require_x0(c);
  if (x0 < 0 || x0 > n) throw DomainError("--x0 must lie in [0, n]");
  const std::uint64_t seed = require_seed(c);
  const std::int64_t trials = require_trials(c, 200'000);
  constants = constants_for(params, c.epsilon, std::nullopt);
  Output out;
  const auto empirical = particle_count_distribution(graph, c.lambda, x0, trials, seed, c.workers);
  const auto reference = binomial_pmf(n, branch_prob(params, x0));
  const double tv = total_variation(empirical, reference);
  out.results["tv_distance"] = tv;
  out.results["graph"] = c.graph.empty() ? "complete:" + std::to_string(n) : c.graph;
  out.tables.push_back(
      {"tv.csv", {"n", "lambda", "x", "trials", "tv_distance"},
       {{fmt(n), fmt(c.lambda), fmt(x0), fmt(trials), fmt(tv)}}});
  return out;
}

Output run_bounds_report(const ExperimentConfig& c, json& constants) {
  const ModelParams params(c.lambda, single_n(c));
  const BoundSet bounds = make_bound_set(params.lambda(), params.n(), c.epsilon);
  const LevelSpec low = make_level(params, c.epsilon, LevelMode::low);
  const LevelSpec main = resolve_level(params, c, LevelMode::window);
  constants = constants_for(params, c.epsilon, main.u);
  Output out;
  std::vector<Report> reports;
  if (params.lambda() * c.epsilon < 1.0 && std::ceil(c.epsilon * params.n()) >= 2)
    reports.push_back(check_gamma_ratio(params, c.epsilon, bounds.alpha));

  const HittingProfile low_profile = obtain_profile(params, low.u, c, out.results);
  if (bounds.envelope_applicable) reports.push_back(check_envelope(low_profile, bounds));
  Report beta = check_ratio_beta(low_profile);
  reports.push_back(check_ratio_kappa(low_profile, bounds));
  if (low.u >= 2 && bounds.kappa_applicable) {
    const double beta_hat = beta.value("beta_hat").value_or(1.0);
    reports.push_back(check_tilted_dominance(tilted_kernel(low_profile), beta_hat, bounds.kappa_n));
  }
  reports.push_back(std::move(beta));

  // 0 when no window level exists; the geometric check is then skipped.
  const int window_u = [&] {
    try {
      return threshold_u(params, c.epsilon, LevelMode::window);
    } catch (const DomainError&) {
      return 0;
    }
  }();
  if (main.u != low.u) {
    const HittingProfile main_profile = obtain_profile(params, main.u, c, out.results);
    reports.push_back(check_ratio_kappa(main_profile, bounds));
    if (main.u <= window_u)
      reports.push_back(check_geometric(main_profile, bounds));
  } else if (low.u <= window_u) {
    reports.push_back(check_geometric(low_profile, bounds));
  }

  int failed = 0;
  for (const auto& r : reports) failed += r.passed ? 0 : 1;
  out.results["checks"] = reports.size();
  out.results["failed"] = failed;
  out.report_text = reports_to_text(reports);
  return out;
}

using Runner = Output (*)(const ExperimentConfig&, json&);

struct Entry {
  const char* name;
  Runner run;
  bool stochastic;
};

constexpr Entry kExperiments[] = {
    {"profile", run_profile, false},         {"figure1", run_figure1, false},
    {"figure2", run_figure2, false},         {"cond-time", run_cond_time, false},
    {"uncond-time", run_uncond_time, false}, {"occupation", run_occupation, false},
    {"mc-hitting", run_mc_hitting, true},    {"mc-cond-path", run_mc_cond_path, true},
    {"equivalence", run_equivalence, true},  {"bounds-report", run_bounds_report, false},
};

json config_to_json(const ExperimentConfig& c, bool stochastic) {
  json j;
  j["lambda"] = c.lambda;
  j["n"] = c.n;
  j["epsilon"] = c.epsilon;
  if (c.delta) j["delta"] = *c.delta;
  if (c.x0) j["x0"] = *c.x0;
  if (c.u) j["u"] = *c.u;
  if (c.mode) j["mode"] = std::string(to_string(*c.mode));
  if (stochastic) {
    if (c.trials) j["trials"] = *c.trials;
    if (c.seed) j["seed"] = *c.seed;
  }
  if (!c.graph.empty()) j["graph"] = c.graph;
  return j;
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& e : kExperiments) v.emplace_back(e.name);
    return v;
  }();
  return names;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  const Entry* entry = nullptr;
  for (const auto& e : kExperiments)
    if (config.experiment == e.name) entry = &e;
  if (!entry) throw DomainError("unknown experiment '" + config.experiment + "'");
  if (!(config.epsilon > 0.0 && config.epsilon < 1.0))
    throw DomainError("--epsilon must lie in (0, 1)");

  const auto start = std::chrono::steady_clock::now();
  json constants;
  Output out = entry->run(config, constants);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  ExperimentResult result;
  std::filesystem::create_directories(config.out_dir);
  for (const auto& t : out.tables) {
    const auto path = config.out_dir / t.file;
    write_csv(path, t.header, t.rows);
    result.files.push_back(path);
  }
  if (out.report_text) {
    const auto path = config.out_dir / "report.txt";
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
    f << *out.report_text;
    result.files.push_back(path);
  }

  json& s = result.summary;
  s["experiment"] = config.experiment;
  s["config"] = config_to_json(config, entry->stochastic);
  s["constants"] = constants;
  s["results"] = out.results;
  s["wall_clock_seconds"] = seconds;
  json files = json::array();
  for (const auto& f : result.files) files.push_back(f.filename().string());
  s["files"] = files;

  const auto path = config.out_dir / "summary.json";
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
  f << s.dump(2) << '\n';
  result.files.push_back(path);
  return result;
}

}  // namespace barw
