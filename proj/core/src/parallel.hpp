#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace barw::detail {

inline unsigned resolve_workers(unsigned requested, std::int64_t trials) {
  unsigned w = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
  return static_cast<unsigned>(std::min<std::int64_t>(w, std::max<std::int64_t>(trials, 1)));
}

// Calls body(i) for i in [0, trials) split into contiguous blocks, one per
// worker. body must only touch state owned by trial i. The first exception
// (by worker order) is rethrown.
template <class Body>
void for_each_trial(std::int64_t trials, unsigned workers, Body&& body) {
  workers = resolve_workers(workers, trials);
  if (workers <= 1) {
    for (std::int64_t i = 0; i < trials; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    const std::int64_t block = (trials + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::int64_t lo = w * block;
      const std::int64_t hi = std::min(trials, lo + block);
      pool.emplace_back([&, w, lo, hi] {
        try {
          for (std::int64_t i = lo; i < hi; ++i) body(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace barw::detail
