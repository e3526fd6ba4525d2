#pragma once

#include <span>
#include <vector>

#include "barw/exact_solver.hpp"
#include "barw/report.hpp"

namespace barw {

inline constexpr double kDominanceSlack = 1e-12;
inline constexpr double kPmfNormalizationTolerance = 1e-9;

// True iff a <=_st b, i.e. CDF_a(k) >= CDF_b(k) - kDominanceSlack for all k.
// Both inputs must be nonnegative and sum to 1 within 1e-9 (DomainError
// otherwise); the shorter one is padded with zeros.
bool stochastic_dominance(std::span<const double> a, std::span<const double> b);

std::vector<double> binomial_pmf(int n, double p);

// Poisson pmf truncated once the remaining tail is below `tail`.
std::vector<double> poisson_pmf(double mean, double tail = 1e-16);

// pmf restricted to {0..m} and renormalized.
std::vector<double> conditioned_pmf(std::span<const double> pmf, int m);

// Bin(n,p) <=_st Poi(-n log(1-p)).
Report check_bin_poisson_dominance(int n, double p);

// Bin(n,p1) | {<= m} <=_st Bin(n,p2) | {<= m} for p1 < p2.
Report check_conditioned_binomial_dominance(int n, double p1, double p2, int m);

// For every row x of the tilted kernel: p_phi(x,.) <=_st mu_x with
// mu_x(y) ~ beta^y p(x,y), and nu_x <=_st p_phi(x,.) with
// nu_x(y) ~ kappa^y p(x,y) 1{y < u}. Both laws are normalized in log form.
Report check_tilted_dominance(const TiltedKernel& kernel, double beta, double kappa);

}  // namespace barw
