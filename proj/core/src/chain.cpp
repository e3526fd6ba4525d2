#include "barw/chain.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "barw/errors.hpp"
#include "math_detail.hpp"

namespace barw {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_state(const ModelParams& params, int x, const char* what) {
  if (x < 0 || x > params.n())
    throw DomainError(std::string(what) + ": state " + std::to_string(x) + " outside [0, " +
                      std::to_string(params.n()) + "]");
}

}  // namespace

ModelParams::ModelParams(double lambda, int n) : lambda_(lambda), n_(n) {
  if (!(lambda > 1.0) || !std::isfinite(lambda))
    throw DomainError("ModelParams: lambda must be a finite real > 1");
  if (n < 1) throw DomainError("ModelParams: n must be >= 1");
}

LevelMode parse_level_mode(std::string_view name) {
  if (name == "low") return LevelMode::low;
  if (name == "window") return LevelMode::window;
  if (name == "custom") return LevelMode::custom;
  throw DomainError("unknown level mode '" + std::string(name) + "'");
}

std::string_view to_string(LevelMode mode) {
  switch (mode) {
    case LevelMode::low: return "low";
    case LevelMode::window: return "window";
    case LevelMode::custom: return "custom";
  }
  return "?";
}

double branch_prob(const ModelParams& params, int x) {
  check_state(params, x, "branch_prob");
  const double t = params.lambda() * x / params.n();
  return t * std::exp(-t);
}

double equilibrium(const ModelParams& params) {
  return std::log(params.lambda()) / params.lambda() * params.n();
}

double gw_extinction_prob(double mean) {
  if (!(mean > 1.0 + 1e-12) || !std::isfinite(mean))
    throw DomainError("gw_extinction_prob: mean must exceed 1 (got " + std::to_string(mean) + ")");

  // Work with r = 1 - s so that q close to 1 keeps full relative precision:
  // g(r) = 1 - r - exp(-mean r) is positive on (0, r*) and negative after.
  auto g = [mean](double r) { return -r - std::expm1(-mean * r); };
  double lo = std::numeric_limits<double>::min();
  double hi = 1.0;
  for (int i = 0; i < 2200 && lo < hi; ++i) {
    const double mid = lo + (hi - lo) / 2;
    if (mid <= lo || mid >= hi) break;
    (g(mid) > 0 ? lo : hi) = mid;
  }
  double r = lo + (hi - lo) / 2;
  for (int i = 0; i < 4; ++i) {
    const double slope = -1.0 + mean * std::exp(-mean * r);
    if (slope == 0.0) break;
    const double next = r - g(r) / slope;
    if (!(next > 0.0 && next < 1.0)) break;
    r = next;
  }
  // For small q, 1 - r cancels; the fixed-point identity does not.
  return r > 0.5 ? std::exp(-mean * r) : 1.0 - r;
}

std::vector<double> binomial_log_pmf(int trials, double p) {
  if (trials < 0) throw DomainError("binomial_log_pmf: negative trial count");
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("binomial_log_pmf: p outside [0, 1]");
  std::vector<double> out(static_cast<std::size_t>(trials) + 1, kNegInf);
  if (p == 0.0) {
    out[0] = 0.0;
    return out;
  }
  if (p == 1.0) {
    out[trials] = 0.0;
    return out;
  }
  const double lp = std::log(p);
  const double lq = std::log1p(-p);
  const double lg_n = detail::log_gamma(trials + 1.0);
  for (int k = 0; k <= trials; ++k) {
    out[k] = lg_n - detail::log_gamma(k + 1.0) - detail::log_gamma(trials - k + 1.0) + k * lp +
             (trials - k) * lq;
  }
  return out;
}

LogValue transition_logpmf(const ModelParams& params, int x, int y) {
  check_state(params, x, "transition_logpmf");
  check_state(params, y, "transition_logpmf");
  const double b = branch_prob(params, x);
  if (b == 0.0) return y == 0 ? LogValue::one() : LogValue::zero();
  const int n = params.n();
  return LogValue::from_log(detail::log_choose(n, y) + y * std::log(b) +
                            (n - y) * std::log1p(-b));
}

int threshold_u(const ModelParams& params, double epsilon, LevelMode mode) {
  if (!(epsilon > 0.0)) throw DomainError("threshold_u: epsilon must be positive");
  double level = 0.0;
  switch (mode) {
    case LevelMode::low:
      level = epsilon * params.n();
      break;
    case LevelMode::window: {
      const double lambda = params.lambda();
      if (!(epsilon < std::log(lambda) / lambda))
        throw DomainError("threshold_u: window mode needs epsilon < log(lambda)/lambda");
      level = equilibrium(params) - epsilon * params.n();
      break;
    }
    case LevelMode::custom:
      throw DomainError("threshold_u: custom levels carry their own u");
  }
  const double u = std::ceil(detail::snap_integer(level));
  if (u < 1.0 || u > params.n())
    throw DomainError("threshold_u: threshold " + std::to_string(u) + " outside [1, n]");
  return static_cast<int>(u);
}

LevelSpec make_level(const ModelParams& params, double epsilon, LevelMode mode,
                     std::optional<int> custom_u) {
  LevelSpec spec{epsilon, mode, 1};
  if (mode == LevelMode::custom) {
    if (!custom_u) throw DomainError("make_level: custom mode needs an explicit u");
    if (*custom_u < 1 || *custom_u > params.n())
      throw DomainError("make_level: u must lie in [1, n]");
    spec.u = *custom_u;
  } else {
    spec.u = threshold_u(params, epsilon, mode);
  }
  return spec;
}

LogTransitionTable::LogTransitionTable(const ModelParams& params, int max_row)
    : params_(params), rows_(max_row + 1), cols_(params.n() + 1) {
  if (max_row < 0 || max_row > params.n())
    throw DomainError("LogTransitionTable: row range outside [0, n]");
  const int n = params.n();
  std::vector<double> log_c(static_cast<std::size_t>(n) + 1);
  const double lg_n = detail::log_gamma(n + 1.0);
  for (int y = 0; y <= n; ++y)
    log_c[y] = lg_n - detail::log_gamma(y + 1.0) - detail::log_gamma(n - y + 1.0);

  data_.assign(static_cast<std::size_t>(rows_) * cols_, kNegInf);
  data_[0] = 0.0;  // b(0) = 0: point mass at 0
  for (int x = 1; x < rows_; ++x) {
    const double b = branch_prob(params, x);
    const double lb = std::log(b);
    const double lq = std::log1p(-b);
    double* row = data_.data() + static_cast<std::size_t>(x) * cols_;
    for (int y = 0; y <= n; ++y) row[y] = log_c[y] + y * lb + (n - y) * lq;
  }
}

}  // namespace barw
