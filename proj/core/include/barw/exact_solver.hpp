#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "barw/chain.hpp"
#include "barw/log_value.hpp"

namespace barw {

enum class SolveMethod { dense_logdomain, dense_native, value_iteration };

std::string_view to_string(SolveMethod method);

// Fixed tolerances; not configurable so that acceptance runs reproduce.
inline constexpr double kHarmonicityTolerance = 1e-8;
inline constexpr double kRowSumTolerance = 1e-9;
inline constexpr double kValueIterationTolerance = 1e-13;
inline constexpr long kValueIterationMaxSweeps = 1'000'000;
inline constexpr int kUnconditionalMaxN = 400;

// phi(x) = P_x[T_0 < T_u^+] for x in 0..u-1, stored in log form.
struct HittingProfile {
  ModelParams params;
  int u = 1;
  std::vector<LogValue> log_phi;
  double residual = 0.0;
  SolveMethod method = SolveMethod::dense_logdomain;

  double log(int x) const { return log_phi.at(static_cast<std::size_t>(x)).log_magnitude(); }
};

// Solves phi(x) = p(x,0) + sum_{0<y<u} p(x,y) phi(y) on 1 <= x < u.
// dense_native refuses (DomainError) unless phi >= kappa_n^(u-1) certifies
// every entry stays above 1e-280. Throws SolverError if the harmonicity
// residual exceeds kHarmonicityTolerance.
HittingProfile hitting_profile(const ModelParams& params, int u,
                               SolveMethod method = SolveMethod::dense_logdomain);

// max over 1 <= x < u of |log sum_y p(x,y) phi(y) - log phi(x)|.
double harmonicity_residual(const ModelParams& params, int u, std::span<const LogValue> log_phi);

// Doob transform of p by phi: the chain conditioned on T_0 < T_u^+.
class TiltedKernel {
 public:
  int u() const noexcept { return source_.u; }
  const HittingProfile& source() const noexcept { return source_; }

  // Row x over y = 0..u-1. Row 0 is the point mass at 0.
  std::span<const double> row(int x) const {
    return {rows_.data() + static_cast<std::size_t>(x) * u(), static_cast<std::size_t>(u())};
  }
  double operator()(int x, int y) const { return row(x)[static_cast<std::size_t>(y)]; }

 private:
  friend TiltedKernel tilted_kernel(const HittingProfile& profile);
  explicit TiltedKernel(HittingProfile source) : source_(std::move(source)) {}

  HittingProfile source_;
  std::vector<double> rows_;
};

TiltedKernel tilted_kernel(const HittingProfile& profile);

// Expected steps (or occupation counts) until absorption, indexed by state.
struct TimeProfile {
  int scope = 0;  // u for conditional profiles, n for unconditional ones
  std::vector<double> values;
  bool conditional = false;
};

// t(x) = 1 + sum_{0<y<u} p_phi(x,y) t(y), t(0) = 0.
TimeProfile conditional_expected_extinction(const TiltedKernel& kernel);

// E_x[T_0] for x = 0..n in native doubles; n <= kUnconditionalMaxN.
TimeProfile unconditional_expected_extinction(const ModelParams& params);

// E_x[#{k : delta n < X_k < u} | T_0 < T_u^+].
TimeProfile conditional_occupation_time(const TiltedKernel& kernel, double delta);

}  // namespace barw
