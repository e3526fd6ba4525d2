#include "barw/exact_solver.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "barw/errors.hpp"
#include "state_reduction.hpp"

namespace barw {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_threshold(const ModelParams& params, int u) {
  if (u < 1 || u > params.n())
    throw DomainError("threshold u=" + std::to_string(u) + " outside [1, n]");
}

// log P_x[X_1 >= u] for every row of the table.
double log_upper_tail(std::span<const double> row, int u) {
  return log_sum_exp(row.subspan(static_cast<std::size_t>(u)));
}

std::vector<LogValue> solve_logdomain(const LogTransitionTable& table, int u) {
  const std::size_t m = static_cast<std::size_t>(u - 1);
  detail::AbsorbingSystem<LogValue> sys;
  sys.m = m;
  sys.q.resize(m * m);
  sys.exit.resize(m);
  sys.reward.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const int x = static_cast<int>(i) + 1;
    const auto row = table.row(x);
    for (std::size_t j = 0; j < m; ++j) sys.q[i * m + j] = LogValue::from_log(row[j + 1]);
    sys.reward[i] = LogValue::from_log(row[0]);
    sys.exit[i] = LogValue::from_log(log_add(row[0], log_upper_tail(row, u)));
  }
  auto v = detail::solve_by_state_reduction(std::move(sys), 1);
  v.insert(v.begin(), LogValue::one());
  return v;
}

std::vector<LogValue> solve_native(const LogTransitionTable& table, int u) {
  const std::size_t m = static_cast<std::size_t>(u - 1);
  detail::AbsorbingSystem<double> sys;
  sys.m = m;
  sys.q.resize(m * m);
  sys.exit.resize(m);
  sys.reward.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const int x = static_cast<int>(i) + 1;
    const auto row = table.row(x);
    for (std::size_t j = 0; j < m; ++j) sys.q[i * m + j] = std::exp(row[j + 1]);
    sys.reward[i] = std::exp(row[0]);
    sys.exit[i] = std::exp(log_add(row[0], log_upper_tail(row, u)));
  }
  const auto v = detail::solve_by_state_reduction(std::move(sys), 1);
  std::vector<LogValue> out{LogValue::one()};
  for (double p : v) out.push_back(LogValue::from_real(p));
  return out;
}

std::vector<LogValue> solve_value_iteration(const LogTransitionTable& table, int u,
                                            double& last_change) {
  std::vector<double> cur(static_cast<std::size_t>(u), kNegInf);
  std::vector<double> next(cur.size());
  std::vector<double> terms(cur.size());
  cur[0] = next[0] = 0.0;
  last_change = std::numeric_limits<double>::infinity();
  for (long sweep = 0; sweep < kValueIterationMaxSweeps; ++sweep) {
    double change = 0.0;
    for (int x = 1; x < u; ++x) {
      const auto row = table.row(x);
      for (int y = 0; y < u; ++y) terms[y] = row[y] + cur[y];
      next[x] = log_sum_exp(terms);
      const double d = cur[x] == kNegInf ? std::numeric_limits<double>::infinity()
                                         : std::fabs(next[x] - cur[x]);
      change = std::fmax(change, d);
    }
    cur.swap(next);
    last_change = change;
    if (change < kValueIterationTolerance) break;
  }
  std::vector<LogValue> out;
  out.reserve(cur.size());
  for (double l : cur) out.push_back(LogValue::from_log(l));
  return out;
}

double residual_with_table(const LogTransitionTable& table, int u,
                           std::span<const LogValue> log_phi) {
  std::vector<double> terms(static_cast<std::size_t>(u));
  double worst = 0.0;
  for (int x = 1; x < u; ++x) {
    const auto row = table.row(x);
    for (int y = 0; y < u; ++y) terms[y] = row[y] + log_phi[y].log_magnitude();
    const double lhs = log_sum_exp(terms);
    const double defect = std::fabs(lhs - log_phi[x].log_magnitude());
    if (!(defect <= worst)) worst = std::isnan(defect) ? std::numeric_limits<double>::infinity()
                                                       : std::fmax(worst, defect);
  }
  return worst;
}

// Per-step coupling bound (1 - e lambda / ((e-1) n))^n; phi(x+1) >= kappa_n phi(x).
double kappa_lower(const ModelParams& params) {
  const double c = std::numbers::e * params.lambda() / ((std::numbers::e - 1.0) * params.n());
  return c < 1.0 ? std::pow(1.0 - c, params.n()) : 0.0;
}

TimeProfile conditional_solve(const TiltedKernel& kernel, const std::vector<double>& reward) {
  const int u = kernel.u();
  TimeProfile out{u, std::vector<double>(static_cast<std::size_t>(u), 0.0), true};
  if (u == 1) return out;
  const std::size_t m = static_cast<std::size_t>(u - 1);
  detail::AbsorbingSystem<double> sys;
  sys.m = m;
  sys.q.resize(m * m);
  sys.exit.resize(m);
  sys.reward.assign(reward.begin() + 1, reward.end());
  for (std::size_t i = 0; i < m; ++i) {
    const auto row = kernel.row(static_cast<int>(i) + 1);
    for (std::size_t j = 0; j < m; ++j) sys.q[i * m + j] = row[j + 1];
    sys.exit[i] = row[0];
  }
  const auto v = detail::solve_by_state_reduction(std::move(sys), 1);
  std::copy(v.begin(), v.end(), out.values.begin() + 1);
  return out;
}

}  // namespace

std::string_view to_string(SolveMethod method) {
  switch (method) {
    case SolveMethod::dense_logdomain: return "dense-logdomain";
    case SolveMethod::dense_native: return "dense-native";
    case SolveMethod::value_iteration: return "value-iteration";
  }
  return "?";
}

double harmonicity_residual(const ModelParams& params, int u, std::span<const LogValue> log_phi) {
  check_threshold(params, u);
  if (log_phi.size() != static_cast<std::size_t>(u))
    throw DomainError("harmonicity_residual: profile length differs from u");
  if (u == 1) return 0.0;
  return residual_with_table(LogTransitionTable(params, u - 1), u, log_phi);
}

HittingProfile hitting_profile(const ModelParams& params, int u, SolveMethod method) {
  check_threshold(params, u);
  HittingProfile profile{params, u, {LogValue::one()}, 0.0, method};
  if (u == 1) return profile;

  const LogTransitionTable table(params, u - 1);
  double vi_change = 0.0;
  switch (method) {
    case SolveMethod::dense_logdomain:
      profile.log_phi = solve_logdomain(table, u);
      break;
    case SolveMethod::dense_native: {
      const double kappa = kappa_lower(params);
      if (!(kappa > 0.0) || (u - 1) * std::log(kappa) < std::log(1e-280))
        throw DomainError("dense-native solve not certified: phi may fall below 1e-280");
      profile.log_phi = solve_native(table, u);
      break;
    }
    case SolveMethod::value_iteration:
      profile.log_phi = solve_value_iteration(table, u, vi_change);
      break;
  }

  profile.residual = residual_with_table(table, u, profile.log_phi);
  if (!(profile.residual <= kHarmonicityTolerance)) {
    throw SolverError("hitting_profile(" + std::string(to_string(method)) +
                          "): harmonicity residual " + std::to_string(profile.residual) +
                          " exceeds tolerance",
                      profile.residual);
  }
  if (method == SolveMethod::value_iteration && !(vi_change < kValueIterationTolerance)) {
    throw SolverError("hitting_profile(value-iteration): sweep cap reached", profile.residual);
  }
  return profile;
}

TiltedKernel tilted_kernel(const HittingProfile& profile) {
  if (!(profile.residual <= kHarmonicityTolerance))
    throw DomainError("tilted_kernel: profile residual above tolerance");
  const int u = profile.u;
  TiltedKernel kernel(profile);
  kernel.rows_.assign(static_cast<std::size_t>(u) * u, 0.0);
  kernel.rows_[0] = 1.0;
  if (u == 1) return kernel;

  const LogTransitionTable table(profile.params, u - 1);
  for (int x = 1; x < u; ++x) {
    const auto lrow = table.row(x);
    double* row = kernel.rows_.data() + static_cast<std::size_t>(x) * u;
    const double lphi_x = profile.log(x);
    double sum = 0.0;
    for (int y = 0; y < u; ++y) {
      row[y] = std::exp(lrow[y] + profile.log(y) - lphi_x);
      sum += row[y];
    }
    if (!(std::fabs(sum - 1.0) <= kRowSumTolerance)) {
      throw InconsistencyError("tilted_kernel: row " + std::to_string(x) + " sums to " +
                               std::to_string(sum));
    }
    for (int y = 0; y < u; ++y) row[y] /= sum;
  }
  return kernel;
}

TimeProfile conditional_expected_extinction(const TiltedKernel& kernel) {
  std::vector<double> reward(static_cast<std::size_t>(kernel.u()), 1.0);
  reward[0] = 0.0;
  return conditional_solve(kernel, reward);
}

TimeProfile conditional_occupation_time(const TiltedKernel& kernel, double delta) {
  if (!(delta > 0.0 && delta < 1.0))
    throw DomainError("conditional_occupation_time: delta must lie in (0, 1)");
  const double lower = delta * kernel.source().params.n();
  const int u = kernel.u();
  if (!(lower < u)) throw DomainError("conditional_occupation_time: delta n must be below u");
  std::vector<double> reward(static_cast<std::size_t>(u), 0.0);
  for (int x = 1; x < u; ++x) reward[x] = x > lower ? 1.0 : 0.0;
  return conditional_solve(kernel, reward);
}

TimeProfile unconditional_expected_extinction(const ModelParams& params) {
  const int n = params.n();
  if (n > kUnconditionalMaxN)
    throw DomainError("unconditional_expected_extinction: n=" + std::to_string(n) +
                      " exceeds the cap " + std::to_string(kUnconditionalMaxN));
  const LogTransitionTable table(params, n);
  const std::size_t m = static_cast<std::size_t>(n);
  detail::AbsorbingSystem<double> sys;
  sys.m = m;
  sys.q.resize(m * m);
  sys.exit.resize(m);
  sys.reward.assign(m, 1.0);
  for (std::size_t i = 0; i < m; ++i) {
    const auto row = table.row(static_cast<int>(i) + 1);
    for (std::size_t j = 0; j < m; ++j) sys.q[i * m + j] = std::exp(row[j + 1]);
    sys.exit[i] = std::exp(row[0]);
  }
  TimeProfile out{n, std::vector<double>(m + 1, 0.0), false};
  const auto v = detail::solve_by_state_reduction(std::move(sys), 1);
  std::copy(v.begin(), v.end(), out.values.begin() + 1);
  return out;
}

}  // namespace barw
