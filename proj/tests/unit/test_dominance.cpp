#include <doctest.h>

#include <cmath>
#include <vector>

#include "barw/dominance.hpp"
#include "barw/errors.hpp"

TEST_CASE("stochastic dominance on hand-made laws") {
  const std::vector<double> low{0.5, 0.5};
  const std::vector<double> high{0.0, 0.5, 0.5};
  CHECK(barw::stochastic_dominance(low, high));
  CHECK_FALSE(barw::stochastic_dominance(high, low));
  CHECK(barw::stochastic_dominance(low, low));
  CHECK_THROWS_AS(barw::stochastic_dominance(std::vector<double>{0.5, 0.6}, low), barw::DomainError);
  CHECK_THROWS_AS(barw::stochastic_dominance(std::vector<double>{1.5, -0.5}, low), barw::DomainError);
}

TEST_CASE("pmf builders") {
  const auto b = barw::binomial_pmf(10, 0.3);
  CHECK(b.size() == 11);
  CHECK(b[3] == doctest::Approx(120 * std::pow(0.3, 3) * std::pow(0.7, 7)).epsilon(1e-13));
  const auto p = barw::poisson_pmf(3.0);
  double s = 0.0;
  for (double v : p) s += v;
  CHECK(s == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(p[2] == doctest::Approx(4.5 * std::exp(-3.0)).epsilon(1e-14));
  const auto c = barw::conditioned_pmf(b, 2);
  CHECK(c.size() == 3);
  CHECK(c[0] + c[1] + c[2] == doctest::Approx(1.0));
  CHECK_THROWS_AS(barw::conditioned_pmf(std::vector<double>{0.0, 1.0}, 0), barw::DomainError);
}

TEST_CASE("binomial below Poisson on the grid") {
  for (int n : {5, 20, 100})
    for (double p : {0.05, 0.1, 0.3, 0.5}) {
      const auto r = barw::check_bin_poisson_dominance(n, p);
      CHECK(r.passed);
      CHECK(r.violations.empty());
    }
}

TEST_CASE("conditioned binomials keep their order") {
  for (int m : {5, 10, 20}) CHECK(barw::check_conditioned_binomial_dominance(30, 0.2, 0.4, m).passed);
  CHECK_THROWS_AS(barw::check_conditioned_binomial_dominance(30, 0.4, 0.2, 5), barw::DomainError);
}

TEST_CASE("tilted rows fail against a too-small beta") {
  const barw::ModelParams p(2.0, 200);
  const auto k = barw::tilted_kernel(barw::hitting_profile(p, 10));
  const auto bad = barw::check_tilted_dominance(k, 1e-6, 1e-9);
  CHECK_FALSE(bad.passed);
  CHECK_FALSE(bad.violations.empty());
  CHECK_THROWS_AS(barw::check_tilted_dominance(k, 0.0, 0.1), barw::DomainError);
}
