#include "barw/log_value.hpp"

#include <algorithm>

#include "barw/errors.hpp"

namespace barw {

double log_sub(double a, double b) {
  if (b > a) throw DomainError("log_sub: second operand exceeds the first");
  if (b == -std::numeric_limits<double>::infinity()) return a;
  if (a == b) return -std::numeric_limits<double>::infinity();
  const double d = b - a;
  // log1p(-e^d) loses accuracy near d = 0; log(-expm1(d)) does not.
  return a + (d > -0.6931471805599453 ? std::log(-std::expm1(d)) : std::log1p(-std::exp(d)));
}

double log_sum_exp(std::span<const double> v) {
  constexpr double neg_inf = -std::numeric_limits<double>::infinity();
  if (v.empty()) return neg_inf;
  const double hi = *std::max_element(v.begin(), v.end());
  if (hi == neg_inf) return neg_inf;
  if (hi == std::numeric_limits<double>::infinity()) return hi;
  double s = 0.0;
  for (double x : v) s += std::exp(x - hi);
  return hi + std::log(s);
}

LogValue operator/(LogValue a, LogValue b) {
  if (b.sign_ == 0) throw DomainError("LogValue: division by zero");
  if (a.sign_ == 0) return LogValue{};
  return LogValue(a.sign_ * b.sign_, a.log_ - b.log_);
}

bool operator<(LogValue a, LogValue b) {
  if (a.sign_ != b.sign_) return a.sign_ < b.sign_;
  if (a.sign_ == 0) return false;
  return a.sign_ > 0 ? a.log_ < b.log_ : a.log_ > b.log_;
}

}  // namespace barw
