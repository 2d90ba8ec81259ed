#pragma once

// First-order Zeeman splitting of the doubly degenerate levels. In
// dimensionless units the Zeeman term is 4sb σz with s = g M_eff / (4 M_e).
// σz maps n± to n∓, so it has no diagonal elements in the degenerate pair
// and its off-diagonal element is the overlap δ.

#include "qring/spectrum.hpp"

namespace qring {

struct ZeemanParams {
  double s = -0.00737;
  double b = 1.0;
  /// Sanity bound on |s|; physical semiconductors have |s| < 1.
  double max_abs_s = 1.0;

  void validate() const;
};

enum class Combination { symmetric, antisymmetric };

struct SplitLevel {
  EnergyLevel base;
  double e_plus = 0.0;
  double e_minus = 0.0;
  /// Zero-order eigenvector of e_plus: (Ψ0⁺ + Ψ0⁻)/√2 is symmetric.
  Combination eigenvector_combination = Combination::symmetric;
};

/// δ = ∫ J0(2ar) u² r dr / ∫ u² r dr; both integrals share one adaptive
/// panel set, so the normalization of u cancels.
double overlap_delta(const RadialSolution& sol, double a);

/// e' = 4 s b δ and e± = e0 ± e'. Fills base.delta and base.e_prime.
SplitLevel zeeman_correction(const EnergyLevel& level, const ZeemanParams& zp, double a);

}  // namespace qring
