#pragma once

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "qring/errors.hpp"
#include "qring/radial.hpp"

namespace qring {

struct EnergyLevel {
  int m = 0;
  /// Radial index, 1 for the lowest root at this m.
  int n = 1;
  double e0 = 0.0;
  /// Filled by zeeman_correction; NaN until then.
  double e_prime = std::numeric_limits<double>::quiet_NaN();
  double delta = std::numeric_limits<double>::quiet_NaN();
  RadialSolution solution;
};

struct DetSample {
  double e0 = 0.0;
  double value = 0.0;
};

/// The bracketing scan of one find_levels call, ordered by e0.
struct DetProfile {
  std::vector<DetSample> grid;
};

/// Fewer roots than requested below the search ceiling.
class PartialResultError : public Error {
 public:
  PartialResultError(const std::string& what, std::vector<EnergyLevel> found)
      : Error(what), levels(std::move(found)) {}
  std::vector<EnergyLevel> levels;
};

/// Determinant of the 4×4 matching matrix
///   [ w1(ri)  −w21(ri)  −w22(ri)   0     ]
///   [ w1'(ri) −w21'(ri) −w22'(ri)  0     ]
///   [ 0        w21(1)    w22(1)   −w3(1) ]
///   [ 0        w21'(1)   w22'(1)  −w3'(1)]
/// after scaling every column and then every row to unit max-norm. Both
/// scalings are positive, so roots and signs are those of the raw
/// determinant. A dot uses the 2×2 block [w21 −w3; w21' −w3'] at r = 1.
double matching_determinant(const RingParams& params, double e0);

/// Lowest e0 for which e0 + a² exceeds the infimum over r of
/// v_c(r) + m²/r² + 2bm + b²r²; no bound state lies below it.
double effective_potential_floor(const RingParams& params);

/// v + 8b(n_levels + |m| + 1).
double default_search_ceiling(const RingParams& params, int n_levels);

struct SearchOptions {
  /// Scan step; 0 selects min(b, 0.5).
  double initial_step = 0.0;
  /// Halvings allowed when refining a |det| dip that shows no sign change.
  int max_halvings = 8;
  /// Build and normalize the RadialSolution of every level.
  bool build_solutions = true;
  /// If set, receives every determinant sample taken by the scan.
  DetProfile* profile = nullptr;
};

/// Scans e0 upward from the effective-potential floor, brackets sign
/// changes of matching_determinant, refines each root to |Δe0| <= 1e-10
/// and returns the lowest n_levels levels in ascending order. Throws
/// PartialResultError (carrying what was found) if the ceiling is reached
/// first, RootRefinementError if refinement fails.
std::vector<EnergyLevel> find_levels(const RingParams& params, int n_levels,
                                     double search_ceiling, const SearchOptions& opts = {});
std::vector<EnergyLevel> find_levels(const RingParams& params, int n_levels);

struct RelationResidual {
  int n = 0;
  /// e0(m, a) − [e0(m, a = 0) − a²].
  double a_shift = 0.0;
  /// [e0(m) − e0(−m)] − 4bm.
  double m_spacing = 0.0;
};

struct RelationReport {
  std::vector<RelationResidual> rows;
  double max_a_shift = 0.0;
  double max_m_spacing = 0.0;
  bool within(double tol) const { return max_a_shift <= tol && max_m_spacing <= tol; }
};

/// Residuals of the two exact relations, level by level. levels_pos and
/// levels_neg are the spectra at +m and −m with the remaining parameters
/// equal to params (params.m is +m); the a = 0 spectrum is computed here.
RelationReport verify_relations(const RingParams& params, const std::vector<EnergyLevel>& levels_pos,
                                const std::vector<EnergyLevel>& levels_neg);

}  // namespace qring
