#pragma once

#include <cmath>
#include <cstdint>

namespace qring {

/// A real number stored as mantissa * 2^exponent with an unbounded (64-bit)
/// exponent. Confluent hypergeometric values routinely leave the range of
/// double; this is the log-scaled representation used across the library.
///
/// The mantissa is normalized to 0.5 <= |mantissa| < 1, or is exactly zero.
class ScaledReal {
 public:
  constexpr ScaledReal() = default;
  explicit ScaledReal(double value) { assign(value, 0); }

  static ScaledReal from_parts(double mantissa, std::int64_t exponent) {
    ScaledReal r;
    r.assign(mantissa, exponent);
    return r;
  }
  static ScaledReal from_long_double(long double value);
  /// sign * exp(log_abs). A zero sign yields zero.
  static ScaledReal from_log(long double log_abs, int sign);

  double mantissa() const { return mantissa_; }
  std::int64_t exponent() const { return exponent_; }
  bool is_zero() const { return mantissa_ == 0.0; }
  int sign() const { return (mantissa_ > 0.0) - (mantissa_ < 0.0); }

  /// Nearest double; overflows to +-inf and underflows to 0.
  double to_double() const;
  long double to_long_double() const;
  /// Natural log of |value|; -inf for zero.
  double log_abs() const;

  ScaledReal abs() const { return from_parts(std::fabs(mantissa_), exponent_); }
  ScaledReal operator-() const { return from_parts(-mantissa_, exponent_); }
  ScaledReal scaled_by_pow2(std::int64_t k) const {
    return is_zero() ? *this : from_parts(mantissa_, exponent_ + k);
  }

  friend ScaledReal operator*(const ScaledReal& x, const ScaledReal& y) {
    return from_parts(x.mantissa_ * y.mantissa_, x.exponent_ + y.exponent_);
  }
  friend ScaledReal operator/(const ScaledReal& x, const ScaledReal& y);
  friend ScaledReal operator+(const ScaledReal& x, const ScaledReal& y);
  friend ScaledReal operator-(const ScaledReal& x, const ScaledReal& y) {
    return x + (-y);
  }
  friend ScaledReal operator*(const ScaledReal& x, double y) {
    return x * ScaledReal(y);
  }
  friend ScaledReal operator*(double x, const ScaledReal& y) {
    return ScaledReal(x) * y;
  }
  ScaledReal& operator*=(const ScaledReal& y) { return *this = *this * y; }
  ScaledReal& operator+=(const ScaledReal& y) { return *this = *this + y; }

  /// Compares magnitudes.
  friend bool abs_less(const ScaledReal& x, const ScaledReal& y);

 private:
  void assign(double mantissa, std::int64_t exponent);

  double mantissa_ = 0.0;
  std::int64_t exponent_ = 0;
};

ScaledReal sqrt(const ScaledReal& x);

}  // namespace qring
