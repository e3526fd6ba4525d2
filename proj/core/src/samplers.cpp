#include "barw/samplers.hpp"

#include <cmath>

#include "barw/errors.hpp"
#include "math_detail.hpp"

namespace barw {

namespace {

int binomial_inversion(RandomStream& rng, int n, double p) {
  const double q = 1.0 - p;
  const double s = p / q;
  const double a = (n + 1) * s;
  const double r0 = std::pow(q, n);
  for (;;) {
    double r = r0;
    double u = uniform01(rng);
    int k = 0;
    while (u > r) {
      u -= r;
      ++k;
      if (k > n) break;
      r *= a / k - s;
    }
    if (k <= n) return k;
  }
}

// Hormann (1993), "The generation of binomial random variates". p <= 0.5.
int binomial_btrs(RandomStream& rng, int n, double p) {
  const double q = 1.0 - p;
  const double spq = std::sqrt(n * p * q);
  const double b = 1.15 + 2.53 * spq;
  const double a = -0.0873 + 0.0248 * b + 0.01 * p;
  const double c = n * p + 0.5;
  const double v_r = 0.92 - 4.2 / b;
  const double alpha = (2.83 + 5.1 / b) * spq;
  const double lpq = std::log(p / q);
  const double m = std::floor((n + 1) * p);
  const double h = detail::log_gamma(m + 1) + detail::log_gamma(n - m + 1);
  for (;;) {
    const double u = uniform01(rng) - 0.5;
    double v = uniform01(rng);
    const double us = 0.5 - std::fabs(u);
    const double k = std::floor((2 * a / us + b) * u + c);
    if (k < 0 || k > n) continue;
    if (us >= 0.07 && v <= v_r) return static_cast<int>(k);
    if (v == 0.0) continue;
    v = std::log(v * alpha / (a / (us * us) + b));
    if (v <= h - detail::log_gamma(k + 1) - detail::log_gamma(n - k + 1) + (k - m) * lpq)
      return static_cast<int>(k);
  }
}

// Hormann (1993), "The transformed rejection method for generating Poisson
// random variables".
int poisson_ptrs(RandomStream& rng, double mean) {
  const double slam = std::sqrt(mean);
  const double loglam = std::log(mean);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2);
  for (;;) {
    const double u = uniform01(rng) - 0.5;
    const double v = uniform_open01(rng);
    const double us = 0.5 - std::fabs(u);
    const double k = std::floor((2 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<int>(k);
    if (k < 0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
        -mean + k * loglam - detail::log_gamma(k + 1))
      return static_cast<int>(k);
  }
}

}  // namespace

int sample_binomial(RandomStream& rng, int trials, double p) {
  if (trials < 0 || !(p >= 0.0 && p <= 1.0))
    throw DomainError("sample_binomial: need trials >= 0 and p in [0, 1]");
  if (trials == 0 || p == 0.0) return 0;
  if (p == 1.0) return trials;
  if (p > 0.5) return trials - sample_binomial(rng, trials, 1.0 - p);
  if (trials * p < 10.0) return binomial_inversion(rng, trials, p);
  return binomial_btrs(rng, trials, p);
}

int sample_poisson(RandomStream& rng, double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean))
    throw DomainError("sample_poisson: mean must be finite and >= 0");
  if (mean == 0.0) return 0;
  if (mean <= 30.0) {
    const double limit = std::exp(-mean);
    int k = 0;
    double prod = uniform01(rng);
    while (prod > limit) {
      ++k;
      prod *= uniform01(rng);
    }
    return k;
  }
  return poisson_ptrs(rng, mean);
}

}  // namespace barw
