#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <utility>

namespace barw {

// log(exp(a) + exp(b)); either argument may be -inf.
inline double log_add(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == -std::numeric_limits<double>::infinity()) return a;
  return a + std::log1p(std::exp(b - a));
}

// log(exp(a) - exp(b)) for a >= b. Returns -inf when a == b.
double log_sub(double a, double b);

// Stable log(sum_i exp(v_i)). Empty input or all -inf gives -inf.
double log_sum_exp(std::span<const double> v);

// A real number stored as sign and natural log of its magnitude. Holds
// values such as theta^x or hitting probabilities far below the smallest
// normal double.
class LogValue {
 public:
  constexpr LogValue() = default;

  static LogValue from_log(double log_magnitude, int sign = 1) {
    if (sign == 0 || log_magnitude == -std::numeric_limits<double>::infinity())
      return LogValue{};
    return LogValue(sign > 0 ? 1 : -1, log_magnitude);
  }
  static LogValue from_real(double v) {
    if (v == 0.0) return LogValue{};
    return LogValue(v > 0 ? 1 : -1, std::log(std::fabs(v)));
  }
  static LogValue zero() { return LogValue{}; }
  static LogValue one() { return LogValue(1, 0.0); }

  int sign() const noexcept { return sign_; }
  bool is_zero() const noexcept { return sign_ == 0; }
  // -inf for zero.
  double log_magnitude() const noexcept { return log_; }
  double to_real() const noexcept { return sign_ == 0 ? 0.0 : sign_ * std::exp(log_); }

  LogValue operator-() const { return from_log(log_, -sign_); }

  friend LogValue operator*(LogValue a, LogValue b) {
    if (a.sign_ == 0 || b.sign_ == 0) return LogValue{};
    return LogValue(a.sign_ * b.sign_, a.log_ + b.log_);
  }
  friend LogValue operator/(LogValue a, LogValue b);
  friend LogValue operator+(LogValue a, LogValue b) {
    if (b.sign_ == 0) return a;
    if (a.sign_ == 0) return b;
    if (a.sign_ == b.sign_) return LogValue(a.sign_, log_add(a.log_, b.log_));
    if (a.log_ == b.log_) return LogValue{};
    if (a.log_ > b.log_) return from_log(log_sub(a.log_, b.log_), a.sign_);
    return from_log(log_sub(b.log_, a.log_), b.sign_);
  }
  friend LogValue operator-(LogValue a, LogValue b) { return a + (-b); }

  LogValue& operator+=(LogValue o) { return *this = *this + o; }
  LogValue& operator*=(LogValue o) { return *this = *this * o; }

  friend bool operator==(LogValue a, LogValue b) {
    return a.sign_ == b.sign_ && (a.sign_ == 0 || a.log_ == b.log_);
  }
  friend bool operator<(LogValue a, LogValue b);

 private:
  constexpr LogValue(int s, double l) : sign_(s), log_(l) {}

  int sign_ = 0;
  double log_ = -std::numeric_limits<double>::infinity();
};

}  // namespace barw
