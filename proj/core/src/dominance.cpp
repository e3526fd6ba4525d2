#include "barw/dominance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "barw/chain.hpp"
#include "barw/csv.hpp"
#include "barw/errors.hpp"
#include "math_detail.hpp"

namespace barw {

namespace {

void check_pmf(std::span<const double> p, const char* which) {
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= 0.0)) throw DomainError(std::string("stochastic_dominance: negative mass in ") + which);
    sum += v;
  }
  if (!(std::fabs(sum - 1.0) <= kPmfNormalizationTolerance))
    throw DomainError(std::string("stochastic_dominance: ") + which + " sums to " +
                      format_real(sum));
}

// First k where CDF_a(k) < CDF_b(k) - slack, or -1.
long first_dominance_break(std::span<const double> a, std::span<const double> b) {
  const std::size_t len = std::max(a.size(), b.size());
  double ca = 0.0;
  double cb = 0.0;
  for (std::size_t k = 0; k < len; ++k) {
    ca += k < a.size() ? a[k] : 0.0;
    cb += k < b.size() ? b[k] : 0.0;
    if (ca < cb - kDominanceSlack) return static_cast<long>(k);
  }
  return -1;
}

std::vector<double> normalize_log(const std::vector<double>& logw) {
  const double z = log_sum_exp(logw);
  std::vector<double> out(logw.size());
  std::transform(logw.begin(), logw.end(), out.begin(), [z](double l) { return std::exp(l - z); });
  return out;
}

}  // namespace

bool stochastic_dominance(std::span<const double> a, std::span<const double> b) {
  check_pmf(a, "first pmf");
  check_pmf(b, "second pmf");
  return first_dominance_break(a, b) < 0;
}

std::vector<double> binomial_pmf(int n, double p) {
  const auto logpmf = binomial_log_pmf(n, p);
  std::vector<double> out(logpmf.size());
  std::transform(logpmf.begin(), logpmf.end(), out.begin(), [](double l) { return std::exp(l); });
  return out;
}

std::vector<double> poisson_pmf(double mean, double tail) {
  if (!(mean >= 0.0)) throw DomainError("poisson_pmf: mean must be >= 0");
  if (mean == 0.0) return {1.0};
  const double lm = std::log(mean);
  std::vector<double> out;
  double cum = 0.0;
  for (int k = 0;; ++k) {
    const double p = std::exp(-mean + k * lm - detail::log_gamma(k + 1.0));
    out.push_back(p);
    cum += p;
    if (k > mean && 1.0 - cum < tail) break;
    if (k > mean && p < tail * 1e-3) break;
  }
  return out;
}

std::vector<double> conditioned_pmf(std::span<const double> pmf, int m) {
  if (m < 0) throw DomainError("conditioned_pmf: m must be >= 0");
  const std::size_t len = std::min(pmf.size(), static_cast<std::size_t>(m) + 1);
  std::vector<double> out(pmf.begin(), pmf.begin() + static_cast<std::ptrdiff_t>(len));
  const double z = std::accumulate(out.begin(), out.end(), 0.0);
  if (!(z > 0.0)) throw DomainError("conditioned_pmf: conditioning event has zero mass");
  for (auto& v : out) v /= z;
  return out;
}

Report check_bin_poisson_dominance(int n, double p) {
  Report r;
  r.name = "binomial_le_poisson";
  r.add_parameter("n", static_cast<double>(n));
  r.add_parameter("p", p);
  const double mean = -n * std::log1p(-p);
  const auto bin = binomial_pmf(n, p);
  const auto poi = poisson_pmf(mean);
  r.add_value("poisson_mean", mean);
  r.passed = stochastic_dominance(bin, poi);
  if (!r.passed)
    r.violations.push_back("cdf break at k=" + std::to_string(first_dominance_break(bin, poi)));
  return r;
}

Report check_conditioned_binomial_dominance(int n, double p1, double p2, int m) {
  if (!(p1 < p2)) throw DomainError("check_conditioned_binomial_dominance: need p1 < p2");
  Report r;
  r.name = "conditioned_binomial";
  r.add_parameter("n", static_cast<double>(n));
  r.add_parameter("p1", p1);
  r.add_parameter("p2", p2);
  r.add_parameter("m", static_cast<double>(m));
  const auto a = conditioned_pmf(binomial_pmf(n, p1), m);
  const auto b = conditioned_pmf(binomial_pmf(n, p2), m);
  r.passed = stochastic_dominance(a, b);
  if (!r.passed)
    r.violations.push_back("cdf break at k=" + std::to_string(first_dominance_break(a, b)));
  return r;
}

Report check_tilted_dominance(const TiltedKernel& kernel, double beta, double kappa) {
  if (!(beta > 0.0) || !(kappa > 0.0))
    throw DomainError("check_tilted_dominance: beta and kappa must be positive");
  const auto& profile = kernel.source();
  const int u = kernel.u();
  const int n = profile.params.n();

  Report r;
  r.name = "tilted_dominance";
  r.add_parameter("lambda", profile.params.lambda());
  r.add_parameter("n", static_cast<double>(n));
  r.add_parameter("u", static_cast<double>(u));
  r.add_parameter("beta", beta);
  r.add_parameter("kappa", kappa);
  if (u < 2) {
    r.note = "no transient rows";
    return r;
  }

  const LogTransitionTable table(profile.params, u - 1);
  const double lb = std::log(beta);
  const double lk = std::log(kappa);
  std::size_t upper_rows = 0;
  std::size_t lower_rows = 0;
  for (int x = 1; x < u; ++x) {
    const auto lrow = table.row(x);
    std::vector<double> mu_log(lrow.size());
    for (int y = 0; y <= n; ++y) mu_log[y] = lrow[y] + y * lb;
    std::vector<double> nu_log(static_cast<std::size_t>(u));
    for (int y = 0; y < u; ++y) nu_log[y] = lrow[y] + y * lk;
    const auto mu = normalize_log(mu_log);
    const auto nu = normalize_log(nu_log);
    const auto row = kernel.row(x);

    if (stochastic_dominance(row, mu)) {
      ++upper_rows;
    } else {
      r.violations.push_back("x=" + std::to_string(x) + " p_phi not <=_st mu_x (k=" +
                             std::to_string(first_dominance_break(row, mu)) + ")");
    }
    if (stochastic_dominance(nu, row)) {
      ++lower_rows;
    } else {
      r.violations.push_back("x=" + std::to_string(x) + " nu_x not <=_st p_phi (k=" +
                             std::to_string(first_dominance_break(nu, row)) + ")");
    }
  }
  r.add_value("rows_dominated_by_mu", static_cast<double>(upper_rows));
  r.add_value("rows_dominating_nu", static_cast<double>(lower_rows));
  r.passed = r.violations.empty();
  return r;
}

}  // namespace barw
