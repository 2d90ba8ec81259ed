#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "qring/errors.hpp"
#include "qring/spectrum.hpp"
#include "qring/zeeman.hpp"

using qring::RingParams;

TEST_SUITE("zeeman") {

TEST_CASE("without spin-orbit coupling the overlap is one") {
  const RingParams p{1, 400.0, 0.0, 1.3, 0.5};
  const qring::ZeemanParams zp{-0.00737, p.b};
  for (const auto& lvl : qring::find_levels(p, 2)) {
    const auto split = qring::zeeman_correction(lvl, zp, 0.0);
    CHECK(std::fabs(split.base.delta - 1.0) <= 1e-10);
    CHECK(split.base.e_prime == 4.0 * zp.s * zp.b);
  }
}

TEST_CASE("splitting is symmetric and proportional to the overlap") {
  const RingParams p{0, 400.0, 1.0, 1.0, 0.5};
  const qring::ZeemanParams zp{-0.00737, p.b};
  for (const auto& lvl : qring::find_levels(p, 2)) {
    const auto split = qring::zeeman_correction(lvl, zp, p.a);
    CHECK(split.e_plus + split.e_minus - 2.0 * lvl.e0 == 0.0);
    CHECK(split.base.e_prime == 4.0 * zp.s * zp.b * split.base.delta);
    CHECK(split.e_plus == lvl.e0 + split.base.e_prime);
    CHECK(split.eigenvector_combination == qring::Combination::symmetric);
  }
  const auto first = qring::zeeman_correction(qring::find_levels(p, 1)[0], zp, p.a);
  CHECK(-first.base.e_prime / first.base.e0 == doctest::Approx(5.6869e-4).epsilon(1e-2));
}

TEST_CASE("overlap is bounded by one") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> a_dist(0.0, 6.0), b_dist(0.2, 4.0), ri_dist(0.0, 0.95);
  std::uniform_int_distribution<int> m_dist(-4, 4);
  for (int trial = 0; trial < 8; ++trial) {
    const RingParams p{m_dist(rng), 400.0, a_dist(rng), b_dist(rng), ri_dist(rng)};
    for (const auto& lvl : qring::find_levels(p, 2)) {
      const double d = qring::overlap_delta(lvl.solution, p.a);
      CAPTURE(p.a);
      CAPTURE(p.r_i);
      CHECK(std::fabs(d) <= 1.0);
    }
  }
}

TEST_CASE("overlap does not depend on the normalization of u") {
  const auto lvl = qring::find_levels({2, 400.0, 2.0, 1.0, 0.3}, 1)[0];
  auto scaled = lvl.solution;
  for (qring::ScaledReal* c : {&scaled.c1, &scaled.c21, &scaled.c22, &scaled.c3}) *c = *c * 37.5;
  const double d = qring::overlap_delta(lvl.solution, 2.0);
  CHECK(std::fabs(qring::overlap_delta(scaled, 2.0) - d) <= 1e-12 * std::fabs(d));
}

TEST_CASE("overlap is even in m") {
  for (int m : {1, 2, 3}) {
    const RingParams pos{m, 400.0, 1.0, 1.0, 0.5};
    const RingParams neg{-m, 400.0, 1.0, 1.0, 0.5};
    const auto lp = qring::find_levels(pos, 2);
    const auto ln = qring::find_levels(neg, 2);
    CAPTURE(m);
    for (int k = 0; k < 2; ++k) {
      CHECK(std::fabs(qring::overlap_delta(lp[k].solution, 1.0) - qring::overlap_delta(ln[k].solution, 1.0)) <= 1e-6);
    }
  }
}

TEST_CASE("overlap varies smoothly with a") {
  std::vector<double> delta;
  for (int k = 0; k <= 60; ++k) {
    const double a = 0.05 * k;
    const RingParams p{0, 400.0, a, 1.0, 0.5};
    delta.push_back(qring::overlap_delta(qring::find_levels(p, 1)[0].solution, a));
  }
  for (std::size_t k = 1; k + 2 < delta.size(); ++k) {
    const double step = std::fabs(delta[k + 1] - delta[k]);
    const double neighbours = std::max(std::fabs(delta[k] - delta[k - 1]), std::fabs(delta[k + 2] - delta[k + 1]));
    CAPTURE(k);
    CHECK(step <= 10.0 * neighbours + 1e-12);
  }
  CHECK(delta.front() == 1.0);
  CHECK(delta.back() < delta.front());
}

TEST_CASE("wide rings reverse the sign of the second-level correction") {
  const RingParams p{0, 400.0, 1.0, 1.0, 0.9};
  const auto levels = qring::find_levels(p, 2);
  CHECK(qring::overlap_delta(levels[0].solution, 1.0) > 0.0);
  CHECK(qring::overlap_delta(levels[1].solution, 1.0) < 0.0);
}

TEST_CASE("parameter validation") {
  const auto lvl = qring::find_levels({0, 400.0, 1.0, 1.0, 0.5}, 1)[0];
  CHECK_THROWS_AS(qring::zeeman_correction(lvl, {1.5, 1.0}, 1.0), qring::DomainError);
  CHECK_THROWS_AS(qring::zeeman_correction(lvl, {-0.007, 0.0}, 1.0), qring::DomainError);
  CHECK_THROWS_AS(qring::overlap_delta(lvl.solution, -1.0), qring::DomainError);
}

}  // TEST_SUITE
