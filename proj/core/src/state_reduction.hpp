#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <type_traits>
#include <vector>

#include "barw/errors.hpp"

namespace barw::detail {

// Dense absorbing-chain system over m transient states. `q` is row-major
// m x m, `exit[i]` is the mass leaving the transient set from i (to any
// absorbing state), and `reward[i]` the one-step payoff.
template <class T>
struct AbsorbingSystem {
  std::size_t m = 0;
  std::vector<T> q;
  std::vector<T> exit;
  std::vector<T> reward;

  T& at(std::size_t i, std::size_t j) { return q[i * m + j]; }
};

// Solves v = reward + Q v by eliminating states from the last to the first.
// The pivot 1 - Q[k][k] is formed as exit[k] + sum_{j<k} Q[k][j], so no
// subtraction ever happens and every operand stays nonnegative. This works
// for plain doubles and for LogValue alike. `first_state` maps transient
// index 0 to a chain state for error messages.
template <class T>
std::vector<T> solve_by_state_reduction(AbsorbingSystem<T> sys, int first_state) {
  const std::size_t m = sys.m;
  std::vector<T> pivot(m);

  auto check = [first_state](const T& v, std::size_t i) {
    if constexpr (std::is_floating_point_v<T>) {
      if (!std::isfinite(v)) {
        const int state = first_state + static_cast<int>(i);
        throw OverflowError("state reduction overflowed at state " + std::to_string(state), state);
      }
    }
  };

  for (std::size_t k = m; k-- > 0;) {
    T s = sys.exit[k];
    for (std::size_t j = 0; j < k; ++j) s += sys.at(k, j);
    if (s == T{}) {
      throw SolverError("absorbing system is singular at state " +
                            std::to_string(first_state + static_cast<int>(k)),
                        std::numeric_limits<double>::infinity());
    }
    pivot[k] = s;
    for (std::size_t i = 0; i < k; ++i) {
      const T f = sys.at(i, k) / s;
      if (f == T{}) continue;
      T* row_i = &sys.q[i * m];
      const T* row_k = &sys.q[k * m];
      for (std::size_t j = 0; j < k; ++j) row_i[j] += f * row_k[j];
      sys.exit[i] += f * sys.exit[k];
      sys.reward[i] += f * sys.reward[k];
      check(sys.reward[i], i);
    }
  }

  std::vector<T> v(m);
  for (std::size_t k = 0; k < m; ++k) {
    T acc = sys.reward[k];
    for (std::size_t j = 0; j < k; ++j) acc += sys.at(k, j) * v[j];
    v[k] = acc / pivot[k];
    check(v[k], k);
  }
  return v;
}

}  // namespace barw::detail
