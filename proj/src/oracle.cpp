#include "qring/oracle.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qring/errors.hpp"

namespace qring {

namespace {

// Fraction of the cell [lo, hi] covered by the barrier v_c = v.
double barrier_fraction(double lo, double hi, double r_i) {
  auto overlap = [&](double a, double b) { return std::max(0.0, std::min(hi, b) - std::max(lo, a)); };
  const double inside = overlap(0.0, r_i) + overlap(1.0, hi);
  return inside / (hi - lo);
}

}  // namespace

void FDGrid::validate() const {
  if (n_points < 500) throw DomainError("FDGrid: n_points must be at least 500");
  if (!(r_max >= 2.0) || !std::isfinite(r_max)) throw DomainError("FDGrid: r_max must be at least 2");
}

FDSpectrum fd_spectrum(const RingParams& p, const FDGrid& grid, int n_levels) {
  p.validate();
  grid.validate();
  if (n_levels < 1 || n_levels > grid.n_points) {
    throw DomainError("fd_spectrum: n_levels out of range");
  }
  const int n = grid.n_points;
  const double h = grid.spacing();
  const double h2 = h * h;
  std::vector<double> diag(n), off(std::max(n - 1, 1));
  for (int j = 0; j < n; ++j) {
    const double r = grid.node(j);
    const double face_lo = j * h, face_hi = (j + 1) * h;
    const double vc = p.v * barrier_fraction(face_lo, face_hi, p.is_dot() ? 0.0 : p.r_i);
    const double orbital = p.m * static_cast<double>(p.m) / (r * r) + 2.0 * p.b * p.m +
                           p.b * p.b * r * r - p.a * p.a;
    // Flux terms r_{j±½}/(h² r_j); the last cell's outer face is kept
    // (Dirichlet beyond r_max).
    diag[j] = (face_lo + face_hi) / (h2 * r) + vc + orbital;
    if (j + 1 < n) off[j] = -face_hi / (h2 * std::sqrt(r * grid.node(j + 1)));
  }

  std::vector<double> w(n), z(static_cast<std::size_t>(n) * n_levels);
  std::vector<lapack_int> ifail(n);
  lapack_int found = 0;
  const lapack_int info = LAPACKE_dstevx(LAPACK_COL_MAJOR, 'V', 'I', n, diag.data(), off.data(),
                                         0.0, 0.0, 1, n_levels, 0.0, &found, w.data(), z.data(), n,
                                         ifail.data());
  if (info != 0 || found != n_levels) {
    std::ostringstream msg;
    msg << "fd_spectrum: LAPACKE_dstevx failed (info=" << info << ", found=" << found << " of "
        << n_levels << ")";
    throw EvaluationError(msg.str());
  }

  FDSpectrum out;
  out.grid = grid;
  if (p.b * grid.r_max * grid.r_max / 2.0 < 40.0) {
    std::ostringstream msg;
    msg << "b r_max^2 / 2 = " << p.b * grid.r_max * grid.r_max / 2.0
        << " < 40: Gaussian factor alone does not bound the tail";
    out.warnings.push_back(msg.str());
  }
  const double two_pi = 2.0 * std::numbers::pi;
  for (int k = 0; k < n_levels; ++k) {
    FDLevel lvl;
    lvl.e0 = w[k];
    lvl.u_samples.resize(n);
    const double* col = z.data() + static_cast<std::size_t>(k) * n;
    double peak = 0.0, norm = 0.0;
    int peak_at = 0;
    for (int j = 0; j < n; ++j) {
      const double r = grid.node(j);
      lvl.u_samples[j] = col[j] / std::sqrt(r);
      norm += lvl.u_samples[j] * lvl.u_samples[j] * r * h;
      if (std::fabs(col[j]) > peak) {
        peak = std::fabs(col[j]);
        peak_at = j;
      }
    }
    const double scale = (col[peak_at] < 0.0 ? -1.0 : 1.0) / std::sqrt(two_pi * norm);
    for (double& u : lvl.u_samples) u *= scale;
    const double edge = std::max(std::fabs(col[n - 1]), std::fabs(col[n - 2]));
    if (edge > 1e-6 * peak) {
      std::ostringstream msg;
      msg << "level " << k + 1 << ": tail amplitude " << edge / peak
          << " of peak at r_max = " << grid.r_max << "; increase r_max";
      out.warnings.push_back(msg.str());
    }
    out.levels.push_back(std::move(lvl));
  }
  return out;
}

FDGrid suggest_grid(const RingParams& p, double e0_max, int n_points) {
  p.validate();
  const double energy = p.shifted_energy(e0_max);
  auto barrier = [&](double r) {
    return p.v + p.m * static_cast<double>(p.m) / (r * r) + 2.0 * p.b * p.m + p.b * p.b * r * r;
  };
  double r = 1.0;
  const double dr = 1e-3;
  while (barrier(r) < energy) r += dr;
  double action = 0.0;
  while (action < 40.0) {
    action += std::sqrt(std::max(0.0, barrier(r) - energy)) * dr;
    r += dr;
  }
  FDGrid g;
  g.r_max = std::max(2.0, r);
  g.n_points = n_points;
  return g;
}

double brute_quadrature(const std::function<double(double)>& f, double r_max, int n_points) {
  if (n_points < 1 || !(r_max > 0.0)) throw DomainError("brute_quadrature: invalid grid");
  const double h = r_max / n_points;
  double sum = 0.5 * (f(0.0) + f(r_max));
  for (int j = 1; j < n_points; ++j) sum += f(j * h);
  return sum * h;
}

double eigenvector_l2_error(const RadialSolution& sol, const FDGrid& grid,
                            const std::vector<double>& u_samples) {
  const int n = static_cast<int>(u_samples.size());
  std::vector<double> exact(n);
  double dot = 0.0;
  for (int j = 0; j < n; ++j) {
    const double r = grid.node(j);
    exact[j] = eval_u(sol, r);
    dot += exact[j] * u_samples[j] * r;
  }
  const double sign = dot < 0.0 ? -1.0 : 1.0;
  double num = 0.0, den = 0.0;
  for (int j = 0; j < n; ++j) {
    const double r = grid.node(j);
    const double d = sign * u_samples[j] - exact[j];
    num += d * d * r;
    den += exact[j] * exact[j] * r;
  }
  return std::sqrt(num / den);
}

}  // namespace qring
