#include "qring/scaled_real.hpp"

#include <limits>
#include <numbers>

#include "qring/errors.hpp"

namespace qring {

void ScaledReal::assign(double mantissa, std::int64_t exponent) {
  if (mantissa == 0.0 || !std::isfinite(mantissa)) {
    mantissa_ = mantissa;
    exponent_ = 0;
    return;
  }
  int e = 0;
  mantissa_ = std::frexp(mantissa, &e);
  exponent_ = exponent + e;
}

ScaledReal ScaledReal::from_long_double(long double value) {
  if (value == 0.0L || !std::isfinite(value)) {
    return ScaledReal(static_cast<double>(value));
  }
  int e = 0;
  const long double m = std::frexp(value, &e);
  return from_parts(static_cast<double>(m), e);
}

ScaledReal ScaledReal::from_log(long double log_abs, int sign) {
  if (sign == 0 || log_abs == -std::numeric_limits<long double>::infinity()) {
    return ScaledReal();
  }
  const long double ln2 = std::numbers::ln2_v<long double>;
  const long double k = std::floor(log_abs / ln2);
  const long double rest = log_abs - k * ln2;
  return from_parts(sign * static_cast<double>(std::exp(rest)),
                    static_cast<std::int64_t>(k));
}

double ScaledReal::to_double() const {
  if (is_zero()) return mantissa_;
  if (exponent_ > std::numeric_limits<int>::max()) {
    return mantissa_ > 0 ? std::numeric_limits<double>::infinity()
                         : -std::numeric_limits<double>::infinity();
  }
  if (exponent_ < std::numeric_limits<int>::min()) return 0.0 * mantissa_;
  return std::ldexp(mantissa_, static_cast<int>(exponent_));
}

long double ScaledReal::to_long_double() const {
  if (is_zero()) return mantissa_;
  if (exponent_ > std::numeric_limits<int>::max()) {
    return mantissa_ > 0 ? std::numeric_limits<long double>::infinity()
                         : -std::numeric_limits<long double>::infinity();
  }
  if (exponent_ < std::numeric_limits<int>::min()) return 0.0L;
  return std::ldexp(static_cast<long double>(mantissa_),
                    static_cast<int>(exponent_));
}

double ScaledReal::log_abs() const {
  if (is_zero()) return -std::numeric_limits<double>::infinity();
  return std::log(std::fabs(mantissa_)) +
         static_cast<double>(exponent_) * std::numbers::ln2;
}

ScaledReal operator/(const ScaledReal& x, const ScaledReal& y) {
  if (y.is_zero()) throw DomainError("ScaledReal: division by zero");
  return ScaledReal::from_parts(x.mantissa_ / y.mantissa_,
                                x.exponent_ - y.exponent_);
}

ScaledReal operator+(const ScaledReal& x, const ScaledReal& y) {
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  const std::int64_t shift = x.exponent_ - y.exponent_;
  // Beyond 64 binary orders the smaller operand is below rounding.
  if (shift > 64) return x;
  if (shift < -64) return y;
  if (shift >= 0) {
    return ScaledReal::from_parts(
        x.mantissa_ + std::ldexp(y.mantissa_, static_cast<int>(-shift)),
        x.exponent_);
  }
  return ScaledReal::from_parts(
      std::ldexp(x.mantissa_, static_cast<int>(shift)) + y.mantissa_,
      y.exponent_);
}

bool abs_less(const ScaledReal& x, const ScaledReal& y) {
  if (x.is_zero()) return !y.is_zero();
  if (y.is_zero()) return false;
  if (x.exponent_ != y.exponent_) return x.exponent_ < y.exponent_;
  return std::fabs(x.mantissa_) < std::fabs(y.mantissa_);
}

ScaledReal sqrt(const ScaledReal& x) {
  if (x.sign() < 0) throw DomainError("ScaledReal: sqrt of negative value");
  if (x.is_zero()) return x;
  double m = x.mantissa();
  std::int64_t e = x.exponent();
  if (e % 2 != 0) {
    m *= 2.0;
    e -= 1;
  }
  return ScaledReal::from_parts(std::sqrt(m), e / 2);
}

}  // namespace qring
