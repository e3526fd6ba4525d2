#include <doctest.h>

#include <cmath>
#include <numeric>

#include "barw/chain.hpp"
#include "barw/errors.hpp"
#include "oracle.hpp"

using barw::LevelMode;
using barw::ModelParams;

TEST_CASE("model parameter validation") {
  CHECK_THROWS_AS(ModelParams(1.0, 10), barw::DomainError);
  CHECK_THROWS_AS(ModelParams(0.5, 10), barw::DomainError);
  CHECK_THROWS_AS(ModelParams(NAN, 10), barw::DomainError);
  CHECK_THROWS_AS(ModelParams(2.0, 0), barw::DomainError);
  CHECK_NOTHROW(ModelParams(1.0001, 1));
}

TEST_CASE("branch probability and equilibrium") {
  const ModelParams p(1.5, 1200);
  CHECK(barw::branch_prob(p, 100) == doctest::Approx(0.11031211282307443).epsilon(1e-14));
  CHECK(barw::branch_prob(p, 0) == 0.0);
  CHECK(barw::equilibrium(p) == doctest::Approx(324.37208648653151).epsilon(1e-14));
  CHECK(barw::equilibrium(ModelParams(6.0, 1200)) ==
        doctest::Approx(358.35189384561100).epsilon(1e-14));
  CHECK_THROWS_AS(barw::branch_prob(p, 1201), barw::DomainError);
}

TEST_CASE("Galton-Watson extinction probability") {
  CHECK(barw::gw_extinction_prob(2.0) == doctest::Approx(0.20318786997997995).epsilon(1e-14));
  CHECK(barw::gw_extinction_prob(1.5) == doctest::Approx(0.41718835613418861).epsilon(1e-14));
  for (double m : {1.0001, 1.01, 1.3, 3.0, 10.0, 50.0}) {
    const double q = barw::gw_extinction_prob(m);
    CHECK(q > 0.0);
    CHECK(q < 1.0);
    CHECK(std::exp(-m * (1.0 - q)) == doctest::Approx(q).epsilon(1e-13));
  }
  CHECK(barw::gw_extinction_prob(50.0) == doctest::Approx(std::exp(-50.0)).epsilon(1e-12));
  CHECK_THROWS_AS(barw::gw_extinction_prob(1.0), barw::DomainError);
}

TEST_CASE("transition log pmf") {
  const ModelParams p(2.0, 3);
  CHECK(barw::transition_logpmf(p, 1, 0).log_magnitude() ==
        doctest::Approx(-1.2569191499534256).epsilon(1e-14));
  CHECK(barw::transition_logpmf(p, 0, 0).log_magnitude() == 0.0);
  CHECK(barw::transition_logpmf(p, 0, 1).is_zero());
  for (int x = 0; x <= 3; ++x)
    for (int y = 0; y <= 3; ++y)
      CHECK(barw::transition_logpmf(p, x, y).to_real() ==
            doctest::Approx(static_cast<double>(oracle::transition(2.0L, 3, x, y))).epsilon(1e-13));
}

TEST_CASE("binomial log pmf rows are normalized") {
  for (double p : {0.0, 1e-9, 0.1, 0.5, 0.9, 1.0}) {
    const auto row = barw::binomial_log_pmf(1200, p);
    double s = 0.0;
    for (double l : row) s += std::exp(l);
    CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("log transition table matches single entries") {
  const ModelParams p(6.0, 40);
  const barw::LogTransitionTable t(p, 12);
  CHECK(t.rows() == 13);
  for (int x : {0, 1, 7, 12})
    for (int y : {0, 3, 40})
      CHECK(t(x, y) == barw::transition_logpmf(p, x, y).log_magnitude());
}

TEST_CASE("threshold levels") {
  CHECK(barw::threshold_u(ModelParams(1.5, 1200), 0.05, LevelMode::window) == 265);
  CHECK(barw::threshold_u(ModelParams(6.0, 1200), 0.05, LevelMode::window) == 299);
  CHECK(barw::threshold_u(ModelParams(2.0, 200), 0.05, LevelMode::low) == 10);
  CHECK(barw::threshold_u(ModelParams(2.0, 2000), 0.05, LevelMode::low) == 100);
  CHECK_THROWS_AS(barw::threshold_u(ModelParams(1.5, 1200), 0.5, LevelMode::window),
                  barw::DomainError);
  CHECK_THROWS_AS(barw::make_level(ModelParams(2.0, 50), 0.05, LevelMode::custom),
                  barw::DomainError);
  CHECK_THROWS_AS(barw::make_level(ModelParams(2.0, 50), 0.05, LevelMode::custom, 51),
                  barw::DomainError);
  CHECK(barw::make_level(ModelParams(2.0, 50), 0.05, LevelMode::custom, 10).u == 10);
  CHECK(barw::parse_level_mode("low") == LevelMode::low);
  CHECK(barw::to_string(LevelMode::window) == "window");
  CHECK_THROWS_AS(barw::parse_level_mode("high"), barw::DomainError);
}
