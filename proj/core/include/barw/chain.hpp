#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "barw/log_value.hpp"

namespace barw {

// Offspring mean lambda > 1 and number of sites n >= 1 of the mean-field
// (complete-graph) chain.
class ModelParams {
 public:
  ModelParams(double lambda, int n);

  double lambda() const noexcept { return lambda_; }
  int n() const noexcept { return n_; }

  friend bool operator==(const ModelParams&, const ModelParams&) = default;

 private:
  double lambda_;
  int n_;
};

enum class LevelMode { low, window, custom };

LevelMode parse_level_mode(std::string_view name);
std::string_view to_string(LevelMode mode);

// Integer threshold u for the upper passage time T_u^+.
struct LevelSpec {
  double epsilon = 0.0;
  LevelMode mode = LevelMode::window;
  int u = 1;
};

// Builds a LevelSpec. `custom_u` is required for LevelMode::custom and
// ignored otherwise.
LevelSpec make_level(const ModelParams& params, double epsilon, LevelMode mode,
                     std::optional<int> custom_u = std::nullopt);

// Per-site survival probability b(x) = (lambda x / n) exp(-lambda x / n).
double branch_prob(const ModelParams& params, int x);

// (log lambda / lambda) * n
double equilibrium(const ModelParams& params);

// Extinction probability of a Galton-Watson process with Poisson(mean)
// offspring: the root of s = exp(-mean (1 - s)) in (0, 1).
double gw_extinction_prob(double mean);

// log P[Bin(n, b(x)) = y].
LogValue transition_logpmf(const ModelParams& params, int x, int y);

// ceil(eps n) for low, ceil(eq - eps n) for window.
int threshold_u(const ModelParams& params, double epsilon, LevelMode mode);

// log P[Bin(trials, p) = k] for k = 0..trials, via log-gamma. Entries with
// zero mass are -inf.
std::vector<double> binomial_log_pmf(int trials, double p);

// Natural-log transition matrix of the chain restricted to rows 0..max_row,
// columns 0..n. Row x is binomial_log_pmf(n, b(x)).
class LogTransitionTable {
 public:
  LogTransitionTable(const ModelParams& params, int max_row);

  const ModelParams& params() const noexcept { return params_; }
  int rows() const noexcept { return rows_; }
  double operator()(int x, int y) const { return data_[static_cast<std::size_t>(x) * cols_ + y]; }
  std::span<const double> row(int x) const {
    return {data_.data() + static_cast<std::size_t>(x) * cols_, static_cast<std::size_t>(cols_)};
  }

 private:
  ModelParams params_;
  int rows_;
  int cols_;
  std::vector<double> data_;
};

}  // namespace barw
