#pragma once

// Globally adaptive Gauss-Kronrod (7/15) quadrature over a finite interval
// for vector-valued integrands. All components share one panel tree, so
// ratios of components see correlated discretization error.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <queue>
#include <sstream>
#include <tuple>
#include <utility>
#include <vector>

#include "qring/errors.hpp"

namespace qring::quad {

struct Tolerance {
  double absolute = 1e-10;
  double relative = 1e-10;
  int max_panels = 4000;
};

template <class Real, std::size_t N>
struct Estimate {
  std::array<Real, N> value{};
  std::array<Real, N> error{};
  int evaluations = 0;
};

namespace detail {

// Kronrod abscissae (descending, last is the centre) and weights; the
// Gauss 7-point rule uses every second abscissa.
inline constexpr long double kXgk[8] = {
    0.991455371120812639206854697526329L, 0.949107912342758524526189684047851L,
    0.864864423359769072789712788640926L, 0.741531185599394439863864773280788L,
    0.586087235467691130294144845693013L, 0.405845151377397166906606412076961L,
    0.207784955007898467600689403773245L, 0.000000000000000000000000000000000L};
inline constexpr long double kWgk[8] = {
    0.022935322010529224963732008058970L, 0.063092092629978553290700663189204L,
    0.104790010322250183839876322541518L, 0.140653259715525918745189590510238L,
    0.169004726639267902826583426598550L, 0.190350578064785409913256402421014L,
    0.204432940075298892414161999234649L, 0.209482141084727828012999174891714L};
inline constexpr long double kWg[4] = {
    0.129484966168869693270611432679082L, 0.279705391489276667901467771423780L,
    0.381830050505118944950369775488975L, 0.417959183673469387755102040816327L};

template <class Real, std::size_t N>
struct Panel {
  Real lo, hi;
  std::array<Real, N> value;
  std::array<Real, N> error;
  Real weight;  // largest component error, the refinement priority
  bool operator<(const Panel& o) const { return weight < o.weight; }
};

template <class Real, std::size_t N, class F>
Panel<Real, N> gk15(const F& f, Real lo, Real hi) {
  const Real centre = (lo + hi) / 2;
  const Real half = (hi - lo) / 2;
  std::array<Real, N> kronrod{}, gauss{};
  const std::array<Real, N> fc = f(centre);
  for (std::size_t c = 0; c < N; ++c) {
    kronrod[c] = fc[c] * static_cast<Real>(kWgk[7]);
    gauss[c] = fc[c] * static_cast<Real>(kWg[3]);
  }
  for (int j = 0; j < 7; ++j) {
    const Real dx = half * static_cast<Real>(kXgk[j]);
    const std::array<Real, N> f1 = f(centre - dx);
    const std::array<Real, N> f2 = f(centre + dx);
    for (std::size_t c = 0; c < N; ++c) {
      kronrod[c] += static_cast<Real>(kWgk[j]) * (f1[c] + f2[c]);
      if (j % 2 == 1) gauss[c] += static_cast<Real>(kWg[j / 2]) * (f1[c] + f2[c]);
    }
  }
  Panel<Real, N> p{lo, hi, {}, {}, 0};
  for (std::size_t c = 0; c < N; ++c) {
    p.value[c] = kronrod[c] * half;
    p.error[c] = std::fabs((kronrod[c] - gauss[c]) * half);
    p.weight = std::max(p.weight, p.error[c]);
  }
  return p;
}

}  // namespace detail

/// Integrates f over [lo, hi]; f maps Real -> std::array<Real, N>.
/// Stops once every component satisfies
/// error <= max(absolute, relative * |value|).
template <class Real, std::size_t N, class F>
Estimate<Real, N> integrate(const F& f, Real lo, Real hi, const Tolerance& tol = {}) {
  Estimate<Real, N> out;
  if (hi == lo) return out;
  std::priority_queue<detail::Panel<Real, N>> panels;
  panels.push(detail::gk15<Real, N>(f, lo, hi));
  out.evaluations = 15;

  auto totals = [&] {
    std::array<Real, N> v{}, e{};
    auto copy = panels;
    while (!copy.empty()) {
      const auto& p = copy.top();
      for (std::size_t c = 0; c < N; ++c) {
        v[c] += p.value[c];
        e[c] += p.error[c];
      }
      copy.pop();
    }
    return std::pair{v, e};
  };

  // Running sums avoid re-walking the heap every iteration; they are
  // recomputed exactly before returning.
  std::array<Real, N> value = panels.top().value, error = panels.top().error;
  auto converged = [&] {
    for (std::size_t c = 0; c < N; ++c) {
      const Real bound = std::max(static_cast<Real>(tol.absolute),
                                  static_cast<Real>(tol.relative) * std::fabs(value[c]));
      if (error[c] > bound) return false;
    }
    return true;
  };

  while (!converged()) {
    if (static_cast<int>(panels.size()) >= tol.max_panels) {
      std::ostringstream msg;
      msg << "adaptive quadrature on [" << static_cast<double>(lo) << ", "
          << static_cast<double>(hi) << "] exceeded " << tol.max_panels << " panels";
      throw IntegrationError(msg.str());
    }
    const auto worst = panels.top();
    panels.pop();
    const Real mid = (worst.lo + worst.hi) / 2;
    const auto left = detail::gk15<Real, N>(f, worst.lo, mid);
    const auto right = detail::gk15<Real, N>(f, mid, worst.hi);
    out.evaluations += 30;
    for (std::size_t c = 0; c < N; ++c) {
      value[c] += left.value[c] + right.value[c] - worst.value[c];
      error[c] += left.error[c] + right.error[c] - worst.error[c];
    }
    panels.push(left);
    panels.push(right);
  }
  std::tie(out.value, out.error) = totals();
  return out;
}

/// Scalar convenience wrapper.
template <class Real, class F>
Real integrate_scalar(const F& f, Real lo, Real hi, const Tolerance& tol = {}) {
  auto wrapped = [&](Real t) { return std::array<Real, 1>{f(t)}; };
  return integrate<Real, 1>(wrapped, lo, hi, tol).value[0];
}

}  // namespace qring::quad
