#pragma once

// 100-digit reference evaluations used only by the tests. They follow
// textbook definitions (plain power series, integral representations) and
// share no code with the library.

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_dec_float.hpp>

namespace oracle_hp {

using Big = boost::multiprecision::cpp_dec_float_100;

/// M(a, b, x) = Σ (a)_k x^k / ((b)_k k!).
inline Big kummer_m(const Big& a, const Big& b, const Big& x) {
  Big term = 1, sum = 1;
  const Big eps = Big("1e-110");
  for (int k = 0; k < 100000; ++k) {
    term *= (a + k) * x / ((b + k) * (k + 1));
    sum += term;
    if (k > 10 && abs(term) < eps * abs(sum) && abs(x) < (k + 1)) break;
  }
  return sum;
}

/// U(a, b, x) = (1/Γ(a)) ∫_0^∞ e^{−xt} t^{a−1} (1+t)^{b−a−1} dt, a > 0.
inline Big tricomi_u(const Big& a, const Big& b, const Big& x) {
  boost::math::quadrature::exp_sinh<Big> integrator;
  auto f = [&](const Big& t) -> Big {
    if (t <= 0) return Big(0);
    return exp(-x * t + (a - 1) * log(t) + (b - a - 1) * log1p(t));
  };
  const Big value = integrator.integrate(f, Big("1e-60"));
  return value / boost::math::tgamma(a);
}

/// J0(x) = Σ (−x²/4)^k / (k!)².
inline Big bessel_j0(const Big& x) {
  const Big q = -x * x / 4;
  Big term = 1, sum = 1;
  for (int k = 1; k < 2000; ++k) {
    term *= q / (Big(k) * k);
    sum += term;
    if (abs(term) < Big("1e-110") && k > abs(q)) break;
  }
  return sum;
}

}  // namespace oracle_hp
