#pragma once

// Reference computations written independently of the library: direct
// long double binomials, no log domain, no shared helpers.

#include <cmath>
#include <vector>

namespace oracle {

inline long double branch(long double lambda, int n, int x) {
  const long double r = lambda * x / n;
  return r * std::exp(-r);
}

inline std::vector<long double> binomial_row(int n, long double p) {
  std::vector<long double> row(static_cast<std::size_t>(n) + 1, 0.0L);
  long double c = 1.0L;  // C(n, k)
  for (int k = 0; k <= n; ++k) {
    row[static_cast<std::size_t>(k)] = c * std::pow(p, k) * std::pow(1.0L - p, n - k);
    c = c * (n - k) / (k + 1);
  }
  return row;
}

inline long double transition(long double lambda, int n, int x, int y) {
  return binomial_row(n, branch(lambda, n, x))[static_cast<std::size_t>(y)];
}

// P_x[T_0 < T_u^+ and T_0 <= horizon] by the backward recursion
// v_{k+1}(x) = p(x,0) + sum_{0<y<u} p(x,y) v_k(y), v_0 = 0 off the origin.
inline std::vector<long double> hitting_dp(long double lambda, int n, int u, int horizon) {
  std::vector<std::vector<long double>> p;
  for (int x = 0; x < u; ++x) p.push_back(binomial_row(n, branch(lambda, n, x)));
  std::vector<long double> v(static_cast<std::size_t>(u), 0.0L);
  v[0] = 1.0L;
  for (int k = 0; k < horizon; ++k) {
    std::vector<long double> next(v.size(), 0.0L);
    next[0] = 1.0L;
    for (int x = 1; x < u; ++x) {
      long double s = p[x][0];
      for (int y = 1; y < u; ++y) s += p[x][y] * v[y];
      next[x] = s;
    }
    v = next;
  }
  return v;
}

}  // namespace oracle
