#pragma once

#include <cmath>

namespace barw::detail {

// Re-entrant log-gamma for positive arguments; std::lgamma may write the
// global signgam, which races when samplers run on worker threads.
inline double log_gamma(double x) {
#if defined(__GLIBC__) || defined(__APPLE__)
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

inline double log_choose(int n, int k) {
  return log_gamma(n + 1.0) - log_gamma(k + 1.0) - log_gamma(n - k + 1.0);
}

// Nearest integer when r is within relative 1e-9 of it; guards ceil() against
// decimal inputs such as 0.07 * 100 = 7.000000000000001.
inline double snap_integer(double r) {
  const double k = std::round(r);
  return std::fabs(r - k) <= 1e-9 * std::fmax(1.0, std::fabs(r)) ? k : r;
}

}  // namespace barw::detail
