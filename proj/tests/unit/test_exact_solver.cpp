#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "barw/errors.hpp"
#include "barw/exact_solver.hpp"
#include "oracle.hpp"
#include "state_reduction.hpp"

using barw::ModelParams;
using barw::SolveMethod;

TEST_CASE("tiny instance against the scalar closed form") {
  const ModelParams p(2.0, 3);
  const auto prof = barw::hitting_profile(p, 2);
  const double p10 = static_cast<double>(oracle::transition(2.0L, 3, 1, 0));
  const double p11 = static_cast<double>(oracle::transition(2.0L, 3, 1, 1));
  CHECK(prof.log(0) == 0.0);
  CHECK(std::abs(std::exp(prof.log(1)) - p10 / (1.0 - p11)) < 1e-12);
  CHECK(std::exp(prof.log(1)) == doctest::Approx(0.51193348490983125).epsilon(1e-14));
}

TEST_CASE("profile with u = 1 is the single point phi(0) = 1") {
  const auto prof = barw::hitting_profile(ModelParams(2.0, 5), 1);
  REQUIRE(prof.log_phi.size() == 1);
  CHECK(prof.log(0) == 0.0);
}

TEST_CASE("small instances against the dynamic-program oracle") {
  for (int n = 1; n <= 12; ++n)
    for (int u = 1; u <= std::min(4, n); ++u) {
      const auto prof = barw::hitting_profile(ModelParams(2.0, n), u);
      const auto dp = oracle::hitting_dp(2.0L, n, u, 4000);
      for (int x = 0; x < u; ++x)
        CHECK(std::abs(std::exp(prof.log(x)) - static_cast<double>(dp[x])) < 1e-6);
    }
}

TEST_CASE("horizon-40 oracle for (2, 20, 5)") {
  const auto prof = barw::hitting_profile(ModelParams(2.0, 20), 5);
  const auto dp = oracle::hitting_dp(2.0L, 20, 5, 40);
  for (int x = 0; x < 5; ++x)
    CHECK(std::abs(std::exp(prof.log(x)) - static_cast<double>(dp[x])) < 1e-6);
}

TEST_CASE("solver methods agree where all apply") {
  const ModelParams p(2.0, 50);
  const auto a = barw::hitting_profile(p, 10, SolveMethod::dense_logdomain);
  const auto b = barw::hitting_profile(p, 10, SolveMethod::dense_native);
  const auto c = barw::hitting_profile(p, 10, SolveMethod::value_iteration);
  CHECK(b.method == SolveMethod::dense_native);
  CHECK(c.method == SolveMethod::value_iteration);
  for (int x = 0; x < 10; ++x) {
    CHECK(b.log(x) == doctest::Approx(a.log(x)).epsilon(1e-10));
    CHECK(c.log(x) == doctest::Approx(a.log(x)).epsilon(1e-9));
  }
}

TEST_CASE("native solve refuses uncertified deep profiles") {
  CHECK_THROWS_AS(barw::hitting_profile(ModelParams(6.0, 1200), 299, SolveMethod::dense_native),
                  barw::DomainError);
  // kappa_n^(u-1) ~ 1e-272 still certifies this one.
  const auto native = barw::hitting_profile(ModelParams(1.5, 1200), 265, SolveMethod::dense_native);
  const auto logd = barw::hitting_profile(ModelParams(1.5, 1200), 265);
  for (int x = 0; x < 265; ++x) CHECK(native.log(x) == doctest::Approx(logd.log(x)).epsilon(1e-9));
}

TEST_CASE("deep window profiles stay harmonic in log form") {
  for (double lambda : {1.5, 6.0}) {
    const ModelParams p(lambda, 1200);
    const int u = barw::threshold_u(p, 0.05, barw::LevelMode::window);
    const auto prof = barw::hitting_profile(p, u);
    CHECK(prof.residual < barw::kHarmonicityTolerance);
    CHECK(barw::harmonicity_residual(p, u, prof.log_phi) == doctest::Approx(prof.residual));
    for (int x = 1; x < u; ++x) {
      CHECK(prof.log(x) < 0.0);
      CHECK(std::isfinite(prof.log(x)));
    }
  }
}

TEST_CASE("threshold outside [1, n] is rejected") {
  CHECK_THROWS_AS(barw::hitting_profile(ModelParams(2.0, 10), 0), barw::DomainError);
  CHECK_THROWS_AS(barw::hitting_profile(ModelParams(2.0, 10), 11), barw::DomainError);
}

TEST_CASE("tilted kernel of the tiny instance") {
  const auto k = barw::tilted_kernel(barw::hitting_profile(ModelParams(2.0, 3), 2));
  CHECK(k(1, 0) == doctest::Approx(0.55579343403309827).epsilon(1e-14));
  CHECK(k(1, 1) == doctest::Approx(0.44420656596690173).epsilon(1e-14));
  CHECK(k(0, 0) == 1.0);
  CHECK(k(0, 1) == 0.0);
}

TEST_CASE("tilted kernel rows are distributions") {
  const ModelParams p(6.0, 1200);
  const auto k = barw::tilted_kernel(barw::hitting_profile(p, 299));
  for (int x = 0; x < k.u(); ++x) {
    double s = 0.0;
    for (double v : k.row(x)) {
      CHECK(v >= 0.0);
      s += v;
    }
    CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("conditional expected extinction time") {
  const auto k = barw::tilted_kernel(barw::hitting_profile(ModelParams(2.0, 3), 2));
  const auto t = barw::conditional_expected_extinction(k);
  CHECK(t.conditional);
  CHECK(t.values[0] == 0.0);
  CHECK(t.values[1] == doctest::Approx(1.7992296036020616).epsilon(1e-13));
}

TEST_CASE("unconditional expected extinction time") {
  const auto t1 = barw::unconditional_expected_extinction(ModelParams(2.0, 1));
  CHECK(t1.values[1] == doctest::Approx(1.3711225051817256).epsilon(1e-14));
  const auto t = barw::unconditional_expected_extinction(ModelParams(2.0, 20));
  REQUIRE(t.values.size() == 21);
  CHECK(t.values[0] == 0.0);
  // First-step identity E_x T = 1 + sum_y p(x,y) E_y T.
  for (int x = 1; x <= 20; ++x) {
    long double s = 1.0L;
    const auto row = oracle::binomial_row(20, oracle::branch(2.0L, 20, x));
    for (int y = 1; y <= 20; ++y) s += row[y] * t.values[y];
    CHECK(t.values[x] == doctest::Approx(static_cast<double>(s)).epsilon(1e-10));
  }
  CHECK_THROWS_AS(barw::unconditional_expected_extinction(ModelParams(2.0, 401)),
                  barw::DomainError);
}

TEST_CASE("conditional occupation time") {
  const ModelParams p(1.5, 300);
  const auto k = barw::tilted_kernel(barw::hitting_profile(p, barw::threshold_u(p, 0.05, barw::LevelMode::window)));
  const auto h = barw::conditional_occupation_time(k, 0.1);
  const auto t = barw::conditional_expected_extinction(k);
  for (int x = 0; x < k.u(); ++x) {
    CHECK(h.values[x] >= 0.0);
    CHECK(h.values[x] <= t.values[x] + 1e-9);
  }
  CHECK(h.values[0] == 0.0);
  CHECK_THROWS_AS(barw::conditional_occupation_time(k, 0.0), barw::DomainError);
  CHECK_THROWS_AS(barw::conditional_occupation_time(k, 0.9), barw::DomainError);
}

TEST_CASE("state reduction reports overflow with the offending state") {
  barw::detail::AbsorbingSystem<double> sys;
  sys.m = 2;
  sys.q = {0.0, 1.0, 1.0 - 1e-300, 0.0};
  sys.exit = {0.0, 1e-300};
  sys.reward = {1e300, 1e300};
  CHECK_THROWS_AS(barw::detail::solve_by_state_reduction(std::move(sys), 1), barw::OverflowError);
}
