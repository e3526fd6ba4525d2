#pragma once

#include <optional>

#include "barw/chain.hpp"
#include "barw/exact_solver.hpp"
#include "barw/log_value.hpp"
#include "barw/report.hpp"

namespace barw {

// Constants behind the analytic envelopes for a given (lambda, n, epsilon).
struct BoundSet {
  double lambda = 0.0;
  int n = 0;
  double epsilon = 0.0;

  double q = 0.0;      // q(lambda)
  double q1 = 0.0;     // q(lambda e^{-lambda eps}); NaN when that mean is <= 1
  double q2 = 0.0;     // q(lambda (1 + 2 lambda eps))
  double theta = 0.0;  // q(e^{lambda eps})
  double kappa_n = 0.0;  // (1 - e lambda / ((e-1) n))^n; 0 when the base is <= 0
  double alpha = 0.0;
  double gamma = 0.0;  // exp(-alpha lambda e^{-lambda eps} (1 - lambda eps))

  // eps < 1/(2 lambda) and lambda e^{-lambda eps} > 1.
  bool envelope_applicable = false;
  // e lambda / ((e-1) n) < 1.
  bool kappa_applicable = false;
};

// Default alpha: midpoint of (log lambda / lambda, 1 - 1/lambda).
double default_alpha(double lambda);

BoundSet make_bound_set(double lambda, int n, double epsilon,
                        std::optional<double> alpha = std::nullopt);

// Super/submartingale sandwich for g(x) = P_x[T_0 < T_{eps n}^+], 0 <= x < eps n.
struct Envelope {
  LogValue lower;
  LogValue upper;
};

Envelope envelope_bounds(const BoundSet& bounds, int x);

// theta^x as a LogValue.
LogValue geometric_upper(const BoundSet& bounds, int x);

// Coupling mean beta lambda / (1 - lambda eps) * (1 + 2 lambda eps / (1 - lambda eps))
// for a caller-supplied beta.
double coupling_gamma_bar(double beta, double lambda, double epsilon);

// lower <= phi <= upper on 0 <= x < min(u, eps n), in log form.
Report check_envelope(const HittingProfile& profile, const BoundSet& bounds);

// log phi(x) <= x log theta for x < u; needs u <= ceil(eq - eps n).
Report check_geometric(const HittingProfile& profile, const BoundSet& bounds);

// phi(x+1) / phi(x) >= kappa_n for 0 <= x < u-1. Value "min_ratio".
Report check_ratio_kappa(const HittingProfile& profile, const BoundSet& bounds);

// beta_hat = max_x phi(x+1) / phi(x); passes when lambda * beta_hat < 1.
// Values "beta_hat" and "lambda_beta_hat".
Report check_ratio_beta(const HittingProfile& profile);

// p(x+1,y) <= gamma p(x,y) for 0 <= x < eps n - 1, 0 <= y <= (1-alpha) n b(x),
// plus monotonicity of the ratio in y. Value "max_ratio".
Report check_gamma_ratio(const ModelParams& params, double epsilon, double alpha);

struct TailBound {
  double bound = 0.0;
  double exact = 0.0;
};

// P[Bin(n,b) < xi n b] against exp(-n b (1-xi)^2 / 4).
TailBound binomial_tail_bound(int n, double b, double xi);

}  // namespace barw
