#pragma once

// Confluent hypergeometric functions M(γ, β, x), U(γ, β, x) for integer β,
// their x-derivatives, a logarithmic companion solution, and J0.
//
// Every function has a *_scaled form returning a ScaledReal, whose exponent
// does not overflow; the plain forms convert to double and saturate to
// ±inf / 0 outside double range. All functions are thread-safe.

#include "qring/scaled_real.hpp"

namespace qring {

struct CHFParams {
  double gamma = 0.0;
  int beta = 1;
  double x = 0.0;

  /// Throws DomainError unless beta >= 1 and x >= 0 (both finite).
  void validate() const;

  /// Builds params from a real-valued beta, rejecting non-integers.
  static CHFParams from_real(double gamma, double beta, double x);
};

double kummer_m(const CHFParams& p);
ScaledReal kummer_m_scaled(const CHFParams& p);

/// M(γ, β, x) by direct summation for x of either sign (the Kummer
/// transformation evaluates M at negative argument).
ScaledReal kummer_m_series_scaled(double gamma, int beta, double x);

/// d/dx M(γ, β, x) = (γ/β) M(γ+1, β+1, x).
double kummer_m_dx(const CHFParams& p);
ScaledReal kummer_m_dx_scaled(const CHFParams& p);

/// Requires x > 0; x = 0 raises SingularityError.
double tricomi_u(const CHFParams& p);
ScaledReal tricomi_u_scaled(const CHFParams& p);

/// d/dx U(γ, β, x) = −γ U(γ+1, β+1, x).
double tricomi_u_dx(const CHFParams& p);
ScaledReal tricomi_u_dx_scaled(const CHFParams& p);

struct CompanionValue {
  ScaledReal value;
  ScaledReal slope;  // d/dx
};

/// Second solution of Kummer's equation that stays independent of M when
/// γ is a non-positive integer (where U collapses onto a multiple of M):
///   Y = U / A(γ) + π cot(πγ) M,   A(γ) = (−1)^β / ((β−1)! Γ(γ−β+1)).
/// Wronskian: M Y' − M' Y = (−1)^{β−1} (β−1)!² x^{−β} eˣ / ∏_{0<i<β} (γ − i).
/// Undefined for γ ∈ {1, 2, ...} (DomainError); requires x > 0.
CompanionValue kummer_companion(const CHFParams& p);

/// Bessel function of the first kind, order zero; x >= 0.
double bessel_j0(double x);

}  // namespace qring
