#pragma once

// long double counterparts of the MpfrReal free functions, so the series
// templates can be instantiated for either arithmetic.

#include <cmath>
#include <limits>
#include <numbers>

#include "qring/scaled_real.hpp"

namespace qring::detail {

/// Digamma for real x away from the poles at non-positive integers.
inline long double digamma(long double x) {
  const long double pi = std::numbers::pi_v<long double>;
  long double acc = 0.0L;
  if (x < 0.5L) {
    // Reflection with the argument reduced exactly to (-1/2, 1/2].
    const long double frac = x - std::nearbyint(x);
    if (frac == 0.0L) return std::numeric_limits<long double>::quiet_NaN();
    acc -= pi / std::tan(pi * frac);
    x = 1.0L - x;
  }
  while (x < 16.0L) {
    acc -= 1.0L / x;
    x += 1.0L;
  }
  static constexpr long double kBernoulliOver2k[] = {
      1.0L / 12.0L,           -1.0L / 120.0L,          1.0L / 252.0L,
      -1.0L / 240.0L,         1.0L / 132.0L,           -691.0L / 32760.0L,
      1.0L / 12.0L,           -3617.0L / 8160.0L};
  const long double inv2 = 1.0L / (x * x);
  long double p = inv2;
  long double tail = 0.0L;
  for (long double c : kBernoulliOver2k) {
    tail += c * p;
    p *= inv2;
  }
  return acc + std::log(x) - 0.5L / x - tail;
}

inline long double abs(long double x) { return std::fabs(x); }
inline long double log(long double x) { return std::log(x); }
inline long double exp(long double x) { return std::exp(x); }

inline long double lgamma(long double x, int* sign) {
  return ::lgammal_r(x, sign);
}

inline bool is_zero(long double x) { return x == 0.0L; }
inline bool is_finite(long double x) { return std::isfinite(x); }

inline long exponent_of(long double x) {
  if (x == 0.0L || !std::isfinite(x)) return -(1L << 40);
  return static_cast<long>(std::ilogb(x)) + 1;
}

inline ScaledReal to_scaled(long double x) { return ScaledReal::from_long_double(x); }

inline long double pow2_ld(long k) { return std::ldexp(1.0L, static_cast<int>(k)); }

}  // namespace qring::detail
