#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "qring/errors.hpp"
#include "qring/oracle.hpp"
#include "qring/radial.hpp"
#include "qring/specfun.hpp"
#include "qring/spectrum.hpp"

using qring::RingParams;

namespace {

const RingParams kRing{0, 400.0, 1.0, 1.0, 0.5};

qring::RadialSolution ground(const RingParams& p, int n = 1) {
  return qring::find_levels(p, n).back().solution;
}

}  // namespace

TEST_SUITE("radial") {

TEST_CASE("parameter closed forms and validation") {
  const RingParams p{-2, 400.0, 1.5, 2.0, 0.3};
  CHECK(p.beta() == 3);
  CHECK(p.shifted_energy(10.0) == doctest::Approx(12.25));
  CHECK(p.gamma_o(10.0) == doctest::Approx(0.5 - (12.25 - 400.0) / 8.0));
  CHECK(p.gamma_i(10.0) == doctest::Approx(0.5 - 12.25 / 8.0));
  CHECK_FALSE(p.is_dot());
  CHECK(RingParams{0, 400.0, 1.0, 1.0, 5e-9}.is_dot());

  CHECK_THROWS_AS((RingParams{0, 400.0, 1.0, 1.0, 1.0}.validate()), qring::DomainError);
  CHECK_THROWS_AS((RingParams{0, -1.0, 1.0, 1.0, 0.5}.validate()), qring::DomainError);
  CHECK_THROWS_AS((RingParams{0, 400.0, 1.0, 1e-4, 0.5}.validate()), qring::DomainError);
  CHECK_THROWS_AS((RingParams{0, 400.0, -1.0, 1.0, 0.5}.validate()), qring::DomainError);

  const auto prof = qring::PotentialProfile::from(kRing);
  CHECK(prof(0.2) == 400.0);
  CHECK(prof(0.7) == 0.0);
  CHECK(prof(1.3) == 400.0);
}

TEST_CASE("basis functions are the confluent hypergeometric functions of b r^2") {
  const double e0 = 30.0, r = 0.8;
  const RingParams p{1, 400.0, 1.0, 2.0, 0.5};
  const double x = p.b * r * r;
  const auto w1 = qring::basis_function(p, e0, qring::Basis::w1, r);
  const auto w3 = qring::basis_function(p, e0, qring::Basis::w3, r);
  CHECK(w1.value.to_double() == doctest::Approx(qring::kummer_m({p.gamma_o(e0), 2, x})).epsilon(1e-13));
  CHECK(w3.value.to_double() == doctest::Approx(qring::tricomi_u({p.gamma_o(e0), 2, x})).epsilon(1e-13));
  // d/dr = 2br d/dx
  CHECK(w1.slope.to_double() ==
        doctest::Approx(2.0 * p.b * r * qring::kummer_m_dx({p.gamma_o(e0), 2, x})).epsilon(1e-13));
}

TEST_CASE("u and u' are continuous at both breakpoints") {
  const RingParams cases[] = {kRing, {2, 400.0, 1.0, 1.0, 0.1}, {1, 400.0, 1.0, 1.0, 0.9},
                              {-3, 120.0, 2.5, 0.4, 0.35}, {0, 400.0, 1.0, 1.0, 0.0}};
  for (const auto& p : cases) {
    for (const auto& lvl : qring::find_levels(p, 2)) {
      CAPTURE(p.m);
      CAPTURE(p.r_i);
      CAPTURE(lvl.n);
      if (!p.is_dot()) CHECK(qring::matching_jump(lvl.solution, p.r_i).relative() <= 1e-8);
      CHECK(qring::matching_jump(lvl.solution, 1.0).relative() <= 1e-8);
    }
  }
  CHECK_THROWS_AS(qring::matching_jump(ground({0, 400.0, 1.0, 1.0, 0.0}), 0.5), qring::DomainError);
}

TEST_CASE("normalization and tail truncation") {
  for (const auto& p : {kRing, RingParams{1, 400.0, 1.0, 1.0, 0.0}, RingParams{2, 60.0, 0.5, 0.2, 0.6}}) {
    const auto sol = ground(p, 2);
    CAPTURE(p.m);
    const double n1 = qring::radial_norm_integral(sol);
    CHECK(std::fabs(2.0 * std::numbers::pi * n1 - 1.0) <= 1e-10);
    qring::NormOptions doubled;
    doubled.tail_scale = 2.0;
    CHECK(std::fabs(qring::radial_norm_integral(sol, doubled) - n1) <= 1e-10 * n1);

    // Beyond the truncation radius u² r stays below 1e-12 of its peak and
    // keeps falling.
    double peak = 0.0;
    for (int k = 1; k <= 400; ++k) {
      const double r = sol.tail_radius * k / 400.0;
      const double u = qring::eval_u(sol, r);
      peak = std::max(peak, u * u * r);
    }
    double prev = INFINITY;
    for (int k = 0; k <= 40; ++k) {
      const double r = sol.tail_radius * (1.0 + 0.05 * k);
      const double u = qring::eval_u(sol, r);
      const double d = u * u * r;
      CHECK(d < 1e-12 * peak);
      CHECK(d <= prev);
      prev = d;
    }
  }
}

TEST_CASE("adaptive integrals agree with a 10^6-point trapezoid rule") {
  const auto sol = ground(kRing);
  const int n = 1000000;
  const double r_max = sol.tail_radius;
  const double h = r_max / n;
  std::vector<double> density(n + 1);
  for (int j = 0; j <= n; ++j) {
    const double r = j * h;
    const double u = qring::eval_u(sol, r);
    density[j] = u * u * r;
  }
  auto at = [&](double r) { return density[static_cast<std::size_t>(std::lround(r / h))]; };
  const double brute = qring::brute_quadrature(at, r_max, n);
  CHECK(std::fabs(brute / qring::radial_norm_integral(sol) - 1.0) <= 1e-8);

  const double a = kRing.a;
  auto weighted = [&](double r) { return qring::bessel_j0(2.0 * a * r) * at(r); };
  const double brute_w = qring::brute_quadrature(weighted, r_max, n);
  const auto adaptive = qring::weighted_norm_integrals(sol, [&](double r) { return qring::bessel_j0(2.0 * a * r); });
  CHECK(std::fabs(brute_w / adaptive[1] - 1.0) <= 1e-8);
}

TEST_CASE("origin limit") {
  for (int m : {0, 1, 2, -1}) {
    const auto sol = ground({m, 400.0, 1.0, 1.0, m == 0 ? 0.0 : 0.2});
    CAPTURE(m);
    const double r = 1e-7;
    const auto origin = qring::eval_u_both(sol, 0.0);
    const auto near = qring::eval_u_both(sol, r);
    // Against the interior scale: u = O(r^|m|) near 0, so at r = 1e-7 the
    // values differ from the limit by far less than this.
    double peak = 0.0, slope_peak = 0.0;
    for (int k = 1; k <= 200; ++k) {
      const auto q = qring::eval_u_both(sol, 0.01 * k);
      peak = std::max(peak, std::fabs(q.u));
      slope_peak = std::max(slope_peak, std::fabs(q.u_prime));
    }
    CHECK(std::fabs(origin.u - near.u) <= 1e-6 * peak);
    CHECK(std::fabs(origin.u_prime - near.u_prime) <= 1e-6 * slope_peak);
  }
  CHECK_THROWS_AS(qring::eval_u(ground(kRing), -0.1), qring::DomainError);
}

TEST_CASE("a vanishing inner radius approaches the dot") {
  for (int m : {0, 1, 2}) {
    const auto ring = qring::find_levels({m, 400.0, 1.0, 1.0, 1e-6}, 2);
    const auto dot = qring::find_levels({m, 400.0, 1.0, 1.0, 0.0}, 2);
    CAPTURE(m);
    for (int k = 0; k < 2; ++k) CHECK(std::fabs(ring[k].e0 - dot[k].e0) <= 1e-6);
  }
}

TEST_CASE("both spin branches share energy and radial data") {
  const auto lvl = qring::find_levels({1, 400.0, 1.0, 1.0, 0.5}, 1)[0];
  const auto pair = qring::spinor_pair(lvl.solution);
  CHECK(pair[0].branch == qring::SpinBranch::plus);
  CHECK(pair[1].branch == qring::SpinBranch::minus);
  CHECK(pair[0].radial.e0 == pair[1].radial.e0);
  CHECK(pair[0].radial.c21.to_double() == pair[1].radial.c21.to_double());

  const auto np = pair[0].spinor(), nm = pair[1].spinor();
  CHECK(std::norm(np[0]) + std::norm(np[1]) == doctest::Approx(1.0));
  CHECK(std::abs(std::conj(np[0]) * nm[0] + std::conj(np[1]) * nm[1]) < 1e-15);

  for (double X : {-0.7, 0.1, 0.9}) {
    for (double Y : {-0.4, 0.6}) {
      const auto ap = pair[0].amplitude(X, Y), am = pair[1].amplitude(X, Y);
      const double u = qring::eval_u(lvl.solution, std::hypot(X, Y));
      CHECK(std::abs(pair[0].phase(X, Y)) == doctest::Approx(1.0));
      CHECK(std::norm(ap[0]) + std::norm(ap[1]) == doctest::Approx(u * u).epsilon(1e-12));
      CHECK(std::norm(am[0]) + std::norm(am[1]) == doctest::Approx(u * u).epsilon(1e-12));
      // The two phases are complex conjugates.
      CHECK(std::abs(pair[0].phase(X, Y) - std::conj(pair[1].phase(X, Y))) < 1e-15);
    }
  }
}

}  // TEST_SUITE
