#include "barw/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "barw/csv.hpp"
#include "barw/errors.hpp"
#include "math_detail.hpp"

namespace barw {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
// Absolute slack on log-domain comparisons of exact quantities.
constexpr double kLogSlack = 1e-12;

// log(1 - e^a) for a <= 0.
double log1m_exp(double a) { return log_sub(0.0, a); }

// Number of integers x >= 0 with x < level.
int count_below(double level) {
  const double c = std::ceil(detail::snap_integer(level));
  return c < 0 ? 0 : static_cast<int>(c);
}

std::string ratio_violation(int x, double log_ratio) {
  return "x=" + std::to_string(x) + " ratio=" + format_real(std::exp(log_ratio));
}

}  // namespace

double default_alpha(double lambda) {
  return 0.5 * (std::log(lambda) / lambda + (1.0 - 1.0 / lambda));
}

BoundSet make_bound_set(double lambda, int n, double epsilon, std::optional<double> alpha) {
  const ModelParams params(lambda, n);  // validates lambda and n
  if (!(epsilon > 0.0)) throw DomainError("make_bound_set: epsilon must be positive");

  BoundSet s;
  s.lambda = lambda;
  s.n = n;
  s.epsilon = epsilon;
  s.alpha = alpha.value_or(default_alpha(lambda));
  const double a_lo = std::log(lambda) / lambda;
  const double a_hi = 1.0 - 1.0 / lambda;
  if (!(s.alpha > a_lo && s.alpha < a_hi))
    throw DomainError("make_bound_set: alpha must lie in (log(lambda)/lambda, 1 - 1/lambda)");

  const double le = lambda * epsilon;
  s.q = gw_extinction_prob(lambda);
  const double lambda1 = lambda * std::exp(-le);
  s.q1 = lambda1 > 1.0 + 1e-12 ? gw_extinction_prob(lambda1) : kNaN;
  s.q2 = gw_extinction_prob(lambda * (1.0 + 2.0 * le));
  s.theta = gw_extinction_prob(std::exp(le));
  s.envelope_applicable = epsilon < 1.0 / (2.0 * lambda) && lambda1 > 1.0 + 1e-12;

  const double c = std::numbers::e * lambda / ((std::numbers::e - 1.0) * n);
  s.kappa_applicable = c < 1.0;
  s.kappa_n = s.kappa_applicable ? std::exp(n * std::log1p(-c)) : 0.0;

  s.gamma = std::exp(-s.alpha * lambda1 * (1.0 - le));
  return s;
}

Envelope envelope_bounds(const BoundSet& bounds, int x) {
  if (!bounds.envelope_applicable)
    throw DomainError("envelope_bounds: epsilon violates the envelope preconditions");
  const double level = bounds.epsilon * bounds.n;
  if (x < 0 || x >= count_below(level))
    throw DomainError("envelope_bounds: need 0 <= x < eps n");
  const double l1 = std::log(bounds.q1);
  const double l2 = std::log(bounds.q2);
  const double n = bounds.n;

  Envelope env;
  if (x == 0) {
    env.lower = env.upper = LogValue::one();
    return env;
  }
  env.lower = LogValue::from_log(x * l2 + log1m_exp((level - x) * l2) - log1m_exp(level * l2));
  env.upper = LogValue::from_log(x * l1 + log1m_exp((n - x) * l1) - log1m_exp(n * l1));
  return env;
}

LogValue geometric_upper(const BoundSet& bounds, int x) {
  if (x < 0) throw DomainError("geometric_upper: x must be >= 0");
  return LogValue::from_log(x * std::log(bounds.theta));
}

double coupling_gamma_bar(double beta, double lambda, double epsilon) {
  const double le = lambda * epsilon;
  if (!(le < 1.0)) throw DomainError("coupling_gamma_bar: needs lambda * epsilon < 1");
  return beta * lambda / (1.0 - le) * (1.0 + 2.0 * le / (1.0 - le));
}

Report check_envelope(const HittingProfile& profile, const BoundSet& bounds) {
  Report r;
  r.name = "envelope";
  r.add_parameter("lambda", bounds.lambda);
  r.add_parameter("n", static_cast<double>(bounds.n));
  r.add_parameter("epsilon", bounds.epsilon);
  r.add_parameter("u", static_cast<double>(profile.u));
  if (!bounds.envelope_applicable) {
    r.note = "inapplicable: requires eps < 1/(2 lambda) and lambda e^{-lambda eps} > 1";
    r.passed = false;
    return r;
  }
  const int last = std::min(profile.u, count_below(bounds.epsilon * bounds.n));
  double min_lower_gap = std::numeric_limits<double>::infinity();
  double min_upper_gap = std::numeric_limits<double>::infinity();
  for (int x = 0; x < last; ++x) {
    const auto env = envelope_bounds(bounds, x);
    const double lphi = profile.log(x);
    const double gl = lphi - env.lower.log_magnitude();
    const double gu = env.upper.log_magnitude() - lphi;
    min_lower_gap = std::fmin(min_lower_gap, gl);
    min_upper_gap = std::fmin(min_upper_gap, gu);
    if (gl < -kLogSlack || gu < -kLogSlack) {
      r.violations.push_back("x=" + std::to_string(x) + " log_lower=" +
                             format_real(env.lower.log_magnitude()) + " log_phi=" +
                             format_real(lphi) + " log_upper=" +
                             format_real(env.upper.log_magnitude()));
    }
  }
  r.add_value("q1", bounds.q1);
  r.add_value("q2", bounds.q2);
  r.add_value("min_log_gap_lower", min_lower_gap);
  r.add_value("min_log_gap_upper", min_upper_gap);
  r.passed = r.violations.empty();
  return r;
}

Report check_geometric(const HittingProfile& profile, const BoundSet& bounds) {
  const ModelParams& params = profile.params;
  // T_u^+ for u = ceil(eq - eps n) is the first passage above eq - eps n.
  if (profile.u > threshold_u(params, bounds.epsilon, LevelMode::window))
    throw DomainError("check_geometric: threshold u exceeds ceil(eq - eps n)");
  Report r;
  r.name = "geometric_upper";
  r.add_parameter("lambda", params.lambda());
  r.add_parameter("n", static_cast<double>(params.n()));
  r.add_parameter("epsilon", bounds.epsilon);
  r.add_parameter("u", static_cast<double>(profile.u));
  double min_gap = std::numeric_limits<double>::infinity();
  for (int x = 0; x < profile.u; ++x) {
    const double gap = geometric_upper(bounds, x).log_magnitude() - profile.log(x);
    min_gap = std::fmin(min_gap, gap);
    if (gap < -kLogSlack)
      r.violations.push_back("x=" + std::to_string(x) + " log_phi=" + format_real(profile.log(x)) +
                             " x_log_theta=" + format_real(x * std::log(bounds.theta)));
  }
  r.add_value("theta", bounds.theta);
  r.add_value("min_log_gap", min_gap);
  r.passed = r.violations.empty();
  return r;
}

Report check_ratio_kappa(const HittingProfile& profile, const BoundSet& bounds) {
  Report r;
  r.name = "ratio_kappa";
  r.add_parameter("lambda", profile.params.lambda());
  r.add_parameter("n", static_cast<double>(profile.params.n()));
  r.add_parameter("u", static_cast<double>(profile.u));
  r.add_value("kappa_n", bounds.kappa_n);
  if (!bounds.kappa_applicable) {
    r.note = "inapplicable: e lambda / ((e-1) n) >= 1";
    r.passed = false;
    return r;
  }
  if (profile.u < 2) {
    r.note = "no adjacent pairs";
    return r;
  }
  const double log_kappa = std::log(bounds.kappa_n);
  double min_log_ratio = std::numeric_limits<double>::infinity();
  for (int x = 0; x + 1 < profile.u; ++x) {
    const double lr = profile.log(x + 1) - profile.log(x);
    min_log_ratio = std::fmin(min_log_ratio, lr);
    if (lr < log_kappa) r.violations.push_back(ratio_violation(x, lr));
  }
  r.add_value("min_ratio", std::exp(min_log_ratio));
  r.passed = r.violations.empty();
  return r;
}

Report check_ratio_beta(const HittingProfile& profile) {
  Report r;
  r.name = "ratio_beta";
  const double lambda = profile.params.lambda();
  r.add_parameter("lambda", lambda);
  r.add_parameter("n", static_cast<double>(profile.params.n()));
  r.add_parameter("u", static_cast<double>(profile.u));
  if (profile.u < 2) {
    r.note = "beta_hat undefined: no adjacent pairs";
    return r;
  }
  double max_log_ratio = -std::numeric_limits<double>::infinity();
  for (int x = 0; x + 1 < profile.u; ++x)
    max_log_ratio = std::fmax(max_log_ratio, profile.log(x + 1) - profile.log(x));
  const double beta = std::exp(max_log_ratio);
  r.add_value("beta_hat", beta);
  r.add_value("lambda_beta_hat", lambda * beta);
  r.passed = lambda * beta < 1.0;
  if (!r.passed) r.violations.push_back("lambda*beta_hat=" + format_real(lambda * beta) + " >= 1");
  return r;
}

Report check_gamma_ratio(const ModelParams& params, double epsilon, double alpha) {
  const double lambda = params.lambda();
  if (!(epsilon > 0.0 && epsilon < 1.0 / lambda))
    throw DomainError("check_gamma_ratio: need 0 < epsilon < 1/lambda");
  const BoundSet bounds = make_bound_set(lambda, params.n(), epsilon, alpha);
  const double log_gamma = std::log(bounds.gamma);
  const int n = params.n();

  Report r;
  r.name = "gamma_ratio";
  r.add_parameter("lambda", lambda);
  r.add_parameter("n", static_cast<double>(n));
  r.add_parameter("epsilon", epsilon);
  r.add_parameter("alpha", alpha);

  const int x_end = count_below(epsilon * n - 1.0);  // 0 <= x < eps n - 1
  if (x_end == 0) {
    r.note = "empty grid";
    r.add_value("gamma", bounds.gamma);
    return r;
  }
  const LogTransitionTable table(params, std::min(x_end, n));
  double max_log_ratio = -std::numeric_limits<double>::infinity();
  std::size_t monotone_breaks = 0;
  std::size_t cells = 0;
  for (int x = 0; x < x_end; ++x) {
    const double m0 = (1.0 - alpha) * n * branch_prob(params, x);
    const int y_end = std::min(n, static_cast<int>(std::floor(detail::snap_integer(m0))));
    double prev = -std::numeric_limits<double>::infinity();
    for (int y = 0; y <= y_end; ++y) {
      const double lr = table(x + 1, y) - table(x, y);
      ++cells;
      max_log_ratio = std::fmax(max_log_ratio, lr);
      if (lr > log_gamma + kLogSlack)
        r.violations.push_back("x=" + std::to_string(x) + " y=" + std::to_string(y) +
                               " ratio=" + format_real(std::exp(lr)));
      if (lr < prev - kLogSlack) {
        ++monotone_breaks;
        r.violations.push_back("ratio decreases in y at x=" + std::to_string(x) +
                               " y=" + std::to_string(y));
      }
      prev = lr;
    }
  }
  r.add_value("gamma", bounds.gamma);
  r.add_value("max_ratio", std::exp(max_log_ratio));
  r.add_value("grid_cells", static_cast<double>(cells));
  r.add_value("monotonicity_breaks", static_cast<double>(monotone_breaks));
  r.passed = r.violations.empty();
  return r;
}

TailBound binomial_tail_bound(int n, double b, double xi) {
  if (n < 0) throw DomainError("binomial_tail_bound: n must be >= 0");
  if (!(b > 0.0 && b < 1.0)) throw DomainError("binomial_tail_bound: need 0 < b < 1");
  if (!(xi > 0.0 && xi < 1.0)) throw DomainError("binomial_tail_bound: need 0 < xi < 1");
  const double mean = n * b;
  TailBound out;
  out.bound = std::exp(-mean * (1.0 - xi) * (1.0 - xi) / 4.0);
  const int k_end = std::min(n + 1, count_below(xi * mean));  // k < xi n b
  const auto logpmf = binomial_log_pmf(n, b);
  out.exact = std::exp(log_sum_exp(std::span<const double>(logpmf).first(static_cast<std::size_t>(k_end))));
  return out;
}

}  // namespace barw
