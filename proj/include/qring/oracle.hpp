#pragma once

// Independent cross-checks: a dense finite-difference discretization of the
// radial equation and a brute-force trapezoid rule. Neither uses the
// hypergeometric machinery.

#include <functional>
#include <string>
#include <vector>

#include "qring/radial.hpp"

namespace qring {

struct FDGrid {
  double r_max = 3.0;
  int n_points = 8000;

  /// Throws DomainError unless n_points >= 500 and r_max >= 2.
  void validate() const;
  double spacing() const { return r_max / n_points; }
  /// Cell centre r_j = (j + 1/2) h.
  double node(int j) const { return (j + 0.5) * spacing(); }
};

struct FDLevel {
  double e0 = 0.0;
  /// u at the grid nodes, normalized to 2π Σ u² r h = 1, sign chosen so
  /// the largest-magnitude sample is positive.
  std::vector<double> u_samples;
};

struct FDSpectrum {
  FDGrid grid;
  std::vector<FDLevel> levels;
  /// Non-empty when the eigenvectors do not decay below 1e-6 of their
  /// peak before r_max, or when b r_max² / 2 < 40.
  std::vector<std::string> warnings;
};

/// Lowest n_levels eigenpairs of the radial operator on (0, r_max] with
/// ũ = √r u as unknown:
///   −[r_{j+½}(u_{j+1} − u_j) − r_{j−½}(u_j − u_{j−1})] / (h² r_j)
///     + (v̄_c + m²/r² + 2bm + b²r² − a²) u_j = e0 u_j,
/// which after the ũ substitution is a symmetric tridiagonal matrix. The
/// flux through r = 0 vanishes (r_{−½} = 0) and ũ = 0 beyond r_max. v̄_c
/// is the cell average of the step potential.
FDSpectrum fd_spectrum(const RingParams& params, const FDGrid& grid, int n_levels);

/// Grid with r_max large enough that a state of energy e0_max decays by
/// e^{−40} past its outer turning point (WKB estimate), and at least 2.
FDGrid suggest_grid(const RingParams& params, double e0_max, int n_points = 8000);

/// Composite trapezoid rule for ∫_0^{r_max} f(r) dr on n_points intervals.
double brute_quadrature(const std::function<double(double)>& f, double r_max, int n_points);

/// Relative L² distance sqrt(Σ (u_fd − u)² r / Σ u² r) between an oracle
/// eigenvector and eval_u on the oracle grid, after aligning signs.
double eigenvector_l2_error(const RadialSolution& sol, const FDGrid& grid,
                            const std::vector<double>& u_samples);

}  // namespace qring
