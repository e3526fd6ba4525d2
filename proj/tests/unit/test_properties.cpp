// Randomized invariants over small models. Cases come from a fixed seed, so
// a failure is reproducible from the printed parameters.

#include <doctest.h>

#include <cmath>

#include "barw/bounds.hpp"
#include "barw/dominance.hpp"
#include "barw/exact_solver.hpp"
#include "barw/random.hpp"

namespace {

struct Case {
  double lambda;
  int n;
  int u;
};

Case draw_case(barw::RandomStream& rng) {
  Case c;
  c.lambda = 1.05 + 7.0 * barw::uniform01(rng);
  c.n = 2 + static_cast<int>(barw::uniform_below(rng, 119));
  c.u = 1 + static_cast<int>(barw::uniform_below(rng, static_cast<std::uint64_t>(c.n)));
  return c;
}

}  // namespace

TEST_CASE("profiles are probabilities solving the harmonic system") {
  auto rng = barw::stream_for(20261018, 0);
  for (int i = 0; i < 60; ++i) {
    const Case c = draw_case(rng);
    CAPTURE(c.lambda);
    CAPTURE(c.n);
    CAPTURE(c.u);
    const barw::ModelParams p(c.lambda, c.n);
    const auto prof = barw::hitting_profile(p, c.u);
    CHECK(prof.log(0) == 0.0);
    for (int x = 1; x < c.u; ++x) {
      CHECK(prof.log(x) <= 0.0);
      CHECK(std::isfinite(prof.log(x)));
    }
    CHECK(prof.residual <= barw::kHarmonicityTolerance);
    if (c.u <= 40) {
      const auto vi = barw::hitting_profile(p, c.u, barw::SolveMethod::value_iteration);
      for (int x = 0; x < c.u; ++x) CHECK(vi.log(x) == doctest::Approx(prof.log(x)).epsilon(1e-8));
    }
  }
}

TEST_CASE("tilted kernels are stochastic and conditional times exceed one step") {
  auto rng = barw::stream_for(20261018, 1);
  for (int i = 0; i < 40; ++i) {
    const Case c = draw_case(rng);
    CAPTURE(c.lambda);
    CAPTURE(c.n);
    CAPTURE(c.u);
    const auto k = barw::tilted_kernel(barw::hitting_profile(barw::ModelParams(c.lambda, c.n), c.u));
    for (int x = 0; x < c.u; ++x) {
      double s = 0.0;
      for (double v : k.row(x)) s += v;
      CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
    }
    const auto t = barw::conditional_expected_extinction(k);
    for (int x = 1; x < c.u; ++x) CHECK(t.values[x] >= 1.0 - 1e-12);
  }
}

TEST_CASE("kappa_n bounds every adjacent profile ratio") {
  auto rng = barw::stream_for(20261018, 2);
  int checked = 0;
  for (int i = 0; i < 80; ++i) {
    const Case c = draw_case(rng);
    const auto b = barw::make_bound_set(c.lambda, c.n, 0.05);
    if (!b.kappa_applicable) continue;
    CAPTURE(c.lambda);
    CAPTURE(c.n);
    CAPTURE(c.u);
    CHECK(barw::check_ratio_kappa(barw::hitting_profile(barw::ModelParams(c.lambda, c.n), c.u), b)
              .passed);
    ++checked;
  }
  CHECK(checked > 10);
}

TEST_CASE("binomial laws are ordered in p") {
  auto rng = barw::stream_for(20261018, 3);
  for (int i = 0; i < 50; ++i) {
    const int n = 1 + static_cast<int>(barw::uniform_below(rng, 200));
    const double p1 = barw::uniform01(rng);
    const double p2 = p1 + (1.0 - p1) * barw::uniform01(rng);
    CAPTURE(n);
    CAPTURE(p1);
    CAPTURE(p2);
    CHECK(barw::stochastic_dominance(barw::binomial_pmf(n, p1), barw::binomial_pmf(n, p2)));
    CHECK(barw::check_bin_poisson_dominance(n, std::min(p1, 0.999)).passed);
  }
}
