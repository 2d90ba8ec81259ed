#include "qring/zeeman.hpp"

#include <cmath>
#include <sstream>

#include "qring/specfun.hpp"

namespace qring {

void ZeemanParams::validate() const {
  std::ostringstream msg;
  if (!std::isfinite(s) || std::fabs(s) >= max_abs_s) {
    msg << "ZeemanParams: |s| = " << std::fabs(s) << " exceeds the bound " << max_abs_s;
    throw DomainError(msg.str());
  }
  if (!(b > 0.0) || !std::isfinite(b)) throw DomainError("ZeemanParams: b must be positive");
}

double overlap_delta(const RadialSolution& sol, double a) {
  if (!(a >= 0.0)) throw DomainError("overlap_delta: a must be non-negative");
  if (a == 0.0) return 1.0;
  const auto w = weighted_norm_integrals(sol, [a](double r) { return bessel_j0(2.0 * a * r); });
  return w[1] / w[0];
}

SplitLevel zeeman_correction(const EnergyLevel& level, const ZeemanParams& zp, double a) {
  zp.validate();
  SplitLevel out;
  out.base = level;
  out.base.delta = overlap_delta(level.solution, a);
  out.base.e_prime = 4.0 * zp.s * zp.b * out.base.delta;
  out.e_plus = level.e0 + out.base.e_prime;
  out.e_minus = level.e0 - out.base.e_prime;
  out.eigenvector_combination = Combination::symmetric;
  return out;
}

}  // namespace qring
