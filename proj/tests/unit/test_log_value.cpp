#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "barw/errors.hpp"
#include "barw/log_value.hpp"

using barw::LogValue;

TEST_CASE("log_add and log_sub agree with direct arithmetic") {
  CHECK(barw::log_add(std::log(2.0), std::log(3.0)) == doctest::Approx(std::log(5.0)).epsilon(1e-15));
  CHECK(barw::log_sub(std::log(5.0), std::log(3.0)) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  const double ninf = -std::numeric_limits<double>::infinity();
  CHECK(barw::log_add(ninf, 1.5) == 1.5);
  CHECK(barw::log_add(ninf, ninf) == ninf);
  CHECK(barw::log_sub(1.5, ninf) == 1.5);
  CHECK(barw::log_sub(1.5, 1.5) == ninf);
  CHECK_THROWS_AS(barw::log_sub(1.0, 2.0), barw::DomainError);
}

TEST_CASE("log_sub keeps precision for nearly equal operands") {
  // log(1 - e^{-1e-12}) ~ log(1e-12)
  CHECK(barw::log_sub(0.0, -1e-12) == doctest::Approx(std::log(1e-12)).epsilon(1e-9));
}

TEST_CASE("log_sum_exp far outside double range") {
  std::vector<double> terms{-1000.0, -1000.0, -1000.0 + std::log(2.0)};
  CHECK(barw::log_sum_exp(terms) == doctest::Approx(-1000.0 + std::log(4.0)).epsilon(1e-15));
  CHECK(barw::log_sum_exp(std::vector<double>{}) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("LogValue signed arithmetic") {
  const auto a = LogValue::from_real(-3.0);
  const auto b = LogValue::from_real(5.0);
  CHECK((a + b).to_real() == doctest::Approx(2.0));
  CHECK((a - b).to_real() == doctest::Approx(-8.0));
  CHECK((a * b).to_real() == doctest::Approx(-15.0));
  CHECK((b / a).to_real() == doctest::Approx(-5.0 / 3.0));
  CHECK((a + (-a)).is_zero());
  CHECK(a < b);
  CHECK(-b < a);
  CHECK(LogValue::zero().log_magnitude() == -std::numeric_limits<double>::infinity());
  CHECK(LogValue::one().to_real() == 1.0);
  CHECK_THROWS_AS(b / LogValue::zero(), barw::DomainError);
}

TEST_CASE("LogValue represents magnitudes below the double range") {
  const auto tiny = LogValue::from_log(-2000.0);
  CHECK(tiny.to_real() == 0.0);
  CHECK(!tiny.is_zero());
  const auto sq = tiny * tiny;
  CHECK(sq.log_magnitude() == doctest::Approx(-4000.0));
  CHECK((tiny / tiny).log_magnitude() == doctest::Approx(0.0));
  auto acc = LogValue::zero();
  acc += tiny;
  acc += tiny;
  CHECK(acc.log_magnitude() == doctest::Approx(-2000.0 + std::log(2.0)));
}
