#pragma once

// Power-series representations of the confluent hypergeometric family,
// written once and instantiated for long double and MpfrReal. Each routine
// reports how many leading bits cancelled (largest term vs. result), which
// drives the precision escalation in specfun.cpp.

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qring/errors.hpp"

namespace qring::detail {

inline constexpr long kMaxSeriesTerms = 200000;
inline constexpr long kZeroExponent = -(1L << 40);

template <class Real>
struct SeriesResult {
  Real value{};
  Real slope{};
  long loss_bits = 0;
  bool finite = true;
};

inline long cancellation(long max_exp, long result_exp) {
  if (result_exp == kZeroExponent) return max_exp == kZeroExponent ? 0 : (1L << 20);
  return std::max(0L, max_exp - result_exp);
}

[[noreturn]] inline void throw_nonconvergence(const char* what, double a, int b, double x) {
  std::ostringstream msg;
  msg << what << ": series did not converge within " << kMaxSeriesTerms
      << " terms (gamma=" << a << ", beta=" << b << ", x=" << x << ")";
  throw EvaluationError(msg.str());
}

/// Bound on |ratio| of every term after index k for coefficients of the form
/// (a + k) x / ((beta + k) (k + 1)); decreasing in k.
inline double tail_ratio_bound(double abs_a, double abs_x, int beta, long k) {
  return (abs_a + static_cast<double>(k) + 1.0) * abs_x /
         ((static_cast<double>(k) + 2.0) * (beta + static_cast<double>(k) + 1.0));
}

/// M(a, beta, x) = sum (a)_k x^k / ((beta)_k k!), valid for any real x.
template <class Real>
SeriesResult<Real> kummer_series(double a, int beta, double x, long bits) {
  SeriesResult<Real> out;
  const Real ra(a), rx(x);
  Real term(1.0), sum(1.0);
  long max_exp = exponent_of(term);
  for (long k = 0;; ++k) {
    if (k > kMaxSeriesTerms) throw_nonconvergence("kummer_m", a, beta, x);
    term *= (ra + Real(static_cast<double>(k))) * rx /
            Real((beta + static_cast<double>(k)) * (static_cast<double>(k) + 1.0));
    if (is_zero(term)) break;
    sum += term;
    const long te = exponent_of(term);
    max_exp = std::max(max_exp, te);
    if (tail_ratio_bound(std::fabs(a), std::fabs(x), beta, k) < 0.5 &&
        te < exponent_of(sum) - bits - 4) {
      break;
    }
  }
  out.value = sum;
  out.finite = is_finite(sum);
  out.loss_bits = cancellation(max_exp, exponent_of(sum));
  return out;
}

/// U(a, n+1, x) from the integer-beta logarithmic expansion
///   U = (-1)^{n+1}/(n! G(a-n)) sum (a)_k x^k/((n+1)_k k!)
///         [ln x + psi(a+k) - psi(1+k) - psi(n+k+1)]
///     + 1/G(a) sum_{k=1}^{n} (k-1)! (1-a+k)_{n-k} / (n-k)! x^{-k}
/// a must not be a non-positive integer.
template <class Real>
SeriesResult<Real> tricomi_log_series(double a, int beta, double x, long bits) {
  SeriesResult<Real> out;
  const int n = beta - 1;
  const Real ra(a), z(x), lnz = log(z);

  int sign_n = 1;
  const Real lg_n1 = lgamma(Real(static_cast<double>(n + 1)), &sign_n);

  // Prefactor of the logarithmic sum; vanishes when a - n is a
  // non-positive integer (a in {1, ..., n}).
  const Real a_minus_n = ra - Real(static_cast<double>(n));
  const double amn = a - n;
  const bool log_part_vanishes = amn <= 0.0 && amn == std::nearbyint(amn);
  Real pref(0.0);
  if (!log_part_vanishes) {
    int sg = 1;
    const Real lg = lgamma(a_minus_n, &sg);
    pref = exp(-(lg + lg_n1));
    if (((n + 1) % 2 != 0) != (sg < 0)) pref = -pref;
    if (!is_finite(pref) || is_zero(pref)) {
      out.finite = false;
      return out;
    }
  }

  Real sum(0.0);
  long max_exp_sum = kZeroExponent;
  if (!log_part_vanishes) {
    Real c(1.0);
    Real psi_a = digamma(ra);
    Real psi_1 = digamma(Real(1.0));
    Real psi_n1 = digamma(Real(static_cast<double>(n + 1)));
    sum = lnz + psi_a - psi_1 - psi_n1;
    max_exp_sum = exponent_of(sum);
    for (long k = 0;; ++k) {
      if (k > kMaxSeriesTerms) throw_nonconvergence("tricomi_u", a, beta, x);
      const Real rk(static_cast<double>(k));
      c *= (ra + rk) * z /
           Real((n + 1.0 + static_cast<double>(k)) * (static_cast<double>(k) + 1.0));
      psi_a += Real(1.0) / (ra + rk);
      psi_1 += Real(1.0) / Real(static_cast<double>(k) + 1.0);
      psi_n1 += Real(1.0) / Real(n + 1.0 + static_cast<double>(k));
      const Real bracket = lnz + psi_a - psi_1 - psi_n1;
      const Real term = c * bracket;
      sum += term;
      const long me = exponent_of(c * (abs(lnz) + abs(psi_a) + abs(psi_1) + abs(psi_n1)));
      max_exp_sum = std::max(max_exp_sum, exponent_of(term));
      if (is_zero(c)) break;
      if (tail_ratio_bound(std::fabs(a), x, beta, k) < 0.5 &&
          me < exponent_of(sum) - bits - 4) {
        break;
      }
    }
  }

  Real finite_sum(0.0);
  long max_exp_finite = kZeroExponent;
  Real inv_gamma_a(0.0);
  if (n >= 1) {
    int sg = 1;
    inv_gamma_a = exp(-lgamma(ra, &sg));
    if (sg < 0) inv_gamma_a = -inv_gamma_a;
    Real zinv = Real(1.0) / z;
    Real zpow = zinv;
    Real factorial(1.0);  // (k-1)!
    for (int k = 1; k <= n; ++k) {
      if (k > 1) factorial *= Real(static_cast<double>(k - 1));
      Real poch(1.0);
      for (int i = 0; i < n - k; ++i) {
        poch *= Real(1.0 + k + i) - ra;
      }
      Real denom(1.0);
      for (int i = 2; i <= n - k; ++i) denom *= Real(static_cast<double>(i));
      const Real term = factorial * poch / denom * zpow;
      finite_sum += term;
      max_exp_finite = std::max(max_exp_finite, exponent_of(term));
      zpow *= zinv;
    }
  }

  out.value = pref * sum + inv_gamma_a * finite_sum;
  out.finite = is_finite(out.value);
  const long contributions =
      std::max(is_zero(pref) ? kZeroExponent : exponent_of(pref) + max_exp_sum,
               is_zero(inv_gamma_a) ? kZeroExponent
                                    : exponent_of(inv_gamma_a) + max_exp_finite);
  out.loss_bits = cancellation(contributions, exponent_of(out.value));
  return out;
}

/// Asymptotic expansion U ~ x^{-a} sum (a)_k (a-beta+1)_k / k! (-x)^{-k}.
/// Returns finite = false when the terms start growing before reaching the
/// requested precision.
template <class Real>
SeriesResult<Real> tricomi_asymptotic(double a, int beta, double x, long bits) {
  SeriesResult<Real> out;
  const Real ra(a), rx(x);
  const Real c2 = ra - Real(static_cast<double>(beta - 1));
  Real term(1.0), sum(1.0);
  long max_exp = 1;
  long last_exp = exponent_of(term);
  bool converged = false;
  for (long k = 0; k < 10000; ++k) {
    const Real rk(static_cast<double>(k));
    term *= -(ra + rk) * (c2 + rk) / (Real(static_cast<double>(k) + 1.0) * rx);
    if (is_zero(term)) {
      converged = true;
      break;
    }
    const long te = exponent_of(term);
    if (te > last_exp) break;  // divergent tail reached
    last_exp = te;
    sum += term;
    max_exp = std::max(max_exp, te);
    if (te < exponent_of(sum) - bits - 4) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    out.finite = false;
    return out;
  }
  out.value = exp(-ra * log(rx)) * sum;
  out.finite = is_finite(out.value) && !is_zero(out.value);
  out.loss_bits = cancellation(max_exp, exponent_of(sum));
  return out;
}

/// The logarithmic companion solution of Kummer's equation
///   Y(a, n+1, x) = U(a, n+1, x) / A(a) + pi cot(pi a) M(a, n+1, x),
///   A(a) = (-1)^{n+1} / (n! Gamma(a - n)),
/// expanded as
///   Y = M ln x + sum c_k x^k [psi(1-a-k) - psi(1+k) - psi(n+k+1)]
///       + G(a) sum_{k=1}^{n} (k-1)! (1-a+k)_{n-k}/(n-k)! x^{-k},
///   G(a) = (-1)^{n+1} n! / prod_{i=1}^{n} (a - i).
/// Unlike U, Y stays independent of M when a is a non-positive integer.
/// Defined for a not in {1, 2, ...}. Returns value and d/dx.
template <class Real>
SeriesResult<Real> companion_series(double a, int beta, double x, long bits) {
  SeriesResult<Real> out;
  const int n = beta - 1;
  const Real ra(a), z(x), lnz = log(z), zinv = Real(1.0) / z;
  const bool integer_a = a <= 0.0 && a == std::nearbyint(a);
  const long j = integer_a ? static_cast<long>(-a) : -1;

  Real c(1.0);             // c_k x^k, k = 0
  Real msum(1.0), mslope(0.0);
  Real p = digamma(Real(1.0) - ra);  // psi(1 - a - k)
  Real q1 = digamma(Real(1.0));
  Real qn = digamma(Real(static_cast<double>(n + 1)));
  Real dsum = p - q1 - qn;
  Real dslope(0.0);
  long max_value = std::max(exponent_of(msum * lnz), exponent_of(dsum));
  long max_slope = exponent_of(zinv);
  bool limit_mode = false;  // integer a past the terminating index
  Real limit_term(0.0);

  for (long k = 0;; ++k) {
    if (k > kMaxSeriesTerms) throw_nonconvergence("kummer_companion", a, beta, x);
    const double kk = static_cast<double>(k) + 1.0;  // index of the new term
    const Real denom((n + kk) * kk);
    q1 += Real(1.0) / Real(kk);
    qn += Real(1.0) / Real(n + kk);
    Real value_term, slope_term;
    long magnitude;
    if (integer_a && k == j) {
      // (a)_k hits its zero factor; the pole of psi(1-a-k) supplies the
      // residue, leaving the product with the zero factor replaced by 1.
      limit_mode = true;
      limit_term = c * z / denom;
    } else if (limit_mode) {
      limit_term *= (ra + Real(static_cast<double>(k))) * z / denom;
    }
    if (limit_mode) {
      value_term = limit_term;
      slope_term = Real(kk) * limit_term * zinv;
      dsum += value_term;
      dslope += slope_term;
      magnitude = exponent_of(value_term);
      max_value = std::max(max_value, magnitude);
      max_slope = std::max(max_slope, exponent_of(slope_term));
    } else {
      const Real rk(static_cast<double>(k));
      c *= (ra + rk) * z / denom;
      p += Real(1.0) / (ra + rk);
      const Real d = p - q1 - qn;
      msum += c;
      const Real cslope = Real(kk) * c * zinv;
      mslope += cslope;
      value_term = c * d;
      slope_term = cslope * d;
      dsum += value_term;
      dslope += slope_term;
      magnitude = exponent_of(c * (abs(lnz) + abs(p) + abs(q1) + abs(qn)));
      max_value = std::max({max_value, exponent_of(c * lnz), exponent_of(value_term)});
      max_slope = std::max({max_slope, exponent_of(cslope * lnz),
                            exponent_of(slope_term), exponent_of(c * zinv)});
    }
    if (tail_ratio_bound(std::fabs(a), x, beta, k) < 0.5 &&
        magnitude < std::max({exponent_of(dsum), exponent_of(msum),
                              exponent_of(msum * lnz)}) - bits - 4) {
      break;
    }
  }

  Real fsum(0.0), fslope(0.0);
  if (n >= 1) {
    Real g(static_cast<double>(n % 2 == 0 ? -1 : 1));  // (-1)^{n+1}
    for (int i = 1; i <= n; ++i) g *= Real(static_cast<double>(i)) / (ra - Real(static_cast<double>(i)));
    Real zpow = zinv;
    Real factorial(1.0);
    for (int k = 1; k <= n; ++k) {
      if (k > 1) factorial *= Real(static_cast<double>(k - 1));
      Real poch(1.0);
      for (int i = 0; i < n - k; ++i) poch *= Real(1.0 + k + i) - ra;
      Real denom(1.0);
      for (int i = 2; i <= n - k; ++i) denom *= Real(static_cast<double>(i));
      const Real coef = g * factorial * poch / denom;
      const Real term = coef * zpow;
      const Real sterm = -Real(static_cast<double>(k)) * term * zinv;
      fsum += term;
      fslope += sterm;
      max_value = std::max(max_value, exponent_of(term));
      max_slope = std::max(max_slope, exponent_of(sterm));
      zpow *= zinv;
    }
  }

  out.value = msum * lnz + dsum + fsum;
  out.slope = mslope * lnz + msum * zinv + dslope + fslope;
  out.finite = is_finite(out.value) && is_finite(out.slope);
  out.loss_bits = std::max(cancellation(max_value, exponent_of(out.value)),
                           cancellation(max_slope, exponent_of(out.slope)));
  return out;
}

}  // namespace qring::detail
