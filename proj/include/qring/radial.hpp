#pragma once

// Piecewise radial wavefunction of an electron in a finite-depth ring with
// a perpendicular field. In units where lengths are scaled by the outer
// radius, u(r) solves
//
//   u'' + u'/r + (e0 + a² − v_c(r) − m²/r² − 2bm − b²r²) u = 0
//
// with v_c = v on (0, r_i), 0 on (r_i, 1), v on (1, ∞), and is written as
// u = (br²)^{|m|/2} e^{−br²/2} w(r), with w a combination of confluent
// hypergeometric functions of x = br² in each region.

#include <array>
#include <complex>
#include <functional>

#include "qring/scaled_real.hpp"

namespace qring {

/// Below this inner radius the ring is treated as a dot (region 1 dropped).
inline constexpr double kDotRadius = 1e-8;
/// Smallest admissible field; the parametrization degenerates as b → 0.
inline constexpr double kMinField = 1e-3;

struct RingParams {
  int m = 0;
  double v = 400.0;
  double a = 0.0;
  double b = 1.0;
  double r_i = 0.0;

  /// Throws DomainError unless 0 <= r_i < 1, v > 0, b >= kMinField, a >= 0.
  void validate() const;

  bool is_dot() const { return r_i < kDotRadius; }
  int beta() const;
  /// e0 + a², the only combination of e0 and a the radial equation sees.
  double shifted_energy(double e0) const { return e0 + a * a; }
  double gamma_o(double e0) const;
  double gamma_i(double e0) const;
};

/// The three-region step potential v_c(r).
struct PotentialProfile {
  double v = 0.0;
  double r_i = 0.0;

  static PotentialProfile from(const RingParams& p) { return {p.v, p.r_i}; }
  double operator()(double r) const { return (r < r_i || r > 1.0) ? v : 0.0; }
  std::array<double, 2> breakpoints() const { return {r_i, 1.0}; }
};

/// The four basis functions w and their r-derivatives at one point:
///   w1 = M(γo, β, br²), w21 = M(γi, β, br²), w22 = Y(γi, β, br²),
///   w3 = U(γo, β, br²),
/// where Y is the logarithmic companion of M (see kummer_companion); it
/// spans the same space as M(γi), U(γi) but never degenerates onto M(γi).
struct BasisValues {
  ScaledReal w1, w1p;
  ScaledReal w21, w21p;
  ScaledReal w22, w22p;
  ScaledReal w3, w3p;
};

enum class Basis { w1, w21, w22, w3 };

struct BasisPoint {
  ScaledReal value;
  ScaledReal slope;  // d/dr
};

BasisPoint basis_function(const RingParams& params, double e0, Basis which, double r);
BasisValues basis_values(const RingParams& params, double e0, double r);

struct RadialSolution {
  RingParams params;
  double e0 = 0.0;
  double gamma_o = 0.0;
  double gamma_i = 0.0;
  int beta = 1;
  // Normalized so that 2π ∫ u² r dr = 1. For a dot c1 = c22 = 0.
  ScaledReal c1, c21, c22, c3;
  /// 2π ∫ u² r dr for the provisional coefficients (c1 = 1, or c21 = 1 for
  /// a dot) before rescaling.
  ScaledReal norm;
  /// Radius beyond which u² r < 1e-16 of its peak.
  double tail_radius = 1.0;
};

/// Solves the matching conditions for the coefficients at a determinant
/// root e0 and normalizes. Throws DegenerateMatchingError when the 3×3
/// system is singular to working precision (condition number > 1e12).
RadialSolution solve_coefficients(const RingParams& params, double e0);

/// Defined for r >= 0; r = 0 gives the limiting values.
double eval_u(const RadialSolution& sol, double r);
double eval_u_prime(const RadialSolution& sol, double r);

struct RadialPoint {
  double u = 0.0;
  double u_prime = 0.0;
};
RadialPoint eval_u_both(const RadialSolution& sol, double r);

/// One-sided values of u and u' at a breakpoint, from the inner and outer
/// region formulas.
struct Jump {
  RadialPoint inner, outer;
  /// max(|Δu|, |Δu'|) over the largest of the four one-sided magnitudes.
  double relative() const;
};
Jump matching_jump(const RadialSolution& sol, double breakpoint);

struct NormOptions {
  /// Multiplies the truncation radius (2 doubles it).
  double tail_scale = 1.0;
  double absolute = 1e-10;
  double relative = 1e-10;
};

/// Radius where u² r first drops below 1e-16 of its peak, searched outward
/// from the classical turning point.
double tail_radius(const RadialSolution& sol);

/// ∫_0^∞ u² r dr, split at r_i and 1, truncated at the tail radius.
double radial_norm_integral(const RadialSolution& sol, const NormOptions& opts = {});

/// {∫ u² r dr, ∫ weight(r) u² r dr} on one shared adaptive panel set.
std::array<double, 2> weighted_norm_integrals(const RadialSolution& sol,
                                              const std::function<double(double)>& weight,
                                              const NormOptions& opts = {});

/// Eigenvalue of σ = (σx − σy)/√2 labelling the two degenerate states.
enum class SpinBranch { plus, minus };

/// Ψ± = n± exp[∓i(a/√2)(X+Y)] e^{imφ} u(r), with X, Y in units of the
/// outer radius. Only u is numerical; the spinor and phase are closed form.
struct SpinorAnsatz {
  SpinBranch branch = SpinBranch::plus;
  int m = 0;
  RadialSolution radial;

  /// n± = (1, ±e^{−iπ/4}) / √2.
  std::array<std::complex<double>, 2> spinor() const;
  std::complex<double> phase(double X, double Y) const;
  /// Full two-component amplitude at (X, Y).
  std::array<std::complex<double>, 2> amplitude(double X, double Y) const;
};

/// Both members of the degenerate pair, sharing one radial solution.
std::array<SpinorAnsatz, 2> spinor_pair(const RadialSolution& sol);

}  // namespace qring
