#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qring/errors.hpp"
#include "qring/oracle.hpp"
#include "qring/spectrum.hpp"

using qring::FDGrid;
using qring::RingParams;

TEST_SUITE("oracle") {

TEST_CASE("grid validation") {
  CHECK_NOTHROW((FDGrid{3.0, 500}.validate()));
  CHECK_THROWS_AS((FDGrid{3.0, 499}.validate()), qring::DomainError);
  CHECK_THROWS_AS((FDGrid{1.5, 8000}.validate()), qring::DomainError);
  CHECK(FDGrid{3.0, 8000}.spacing() == doctest::Approx(3.0 / 8000));
  CHECK(FDGrid{4.0, 1000}.node(0) == doctest::Approx(0.002));
}

TEST_CASE("trapezoid reference") {
  CHECK(qring::brute_quadrature([](double r) { return r; }, 1.0, 1000) == doctest::Approx(0.5).epsilon(1e-15));
  const double gauss = qring::brute_quadrature([](double r) { return std::exp(-r * r) * r; }, 10.0, 1000000);
  CHECK(std::fabs(gauss - 0.5) <= 1e-10);
  CHECK_THROWS_AS(qring::brute_quadrature([](double) { return 1.0; }, 1.0, 0), qring::DomainError);
}

TEST_CASE("reference ring on the default grid") {
  const RingParams p{0, 400.0, 1.0, 1.0, 0.5};
  const auto fd = qring::fd_spectrum(p, FDGrid{3.0, 8000}, 2);
  CHECK(std::fabs(fd.levels[0].e0 - 26.4059) <= 5e-3);
  CHECK(std::fabs(fd.levels[1].e0 - 106.878) <= 5e-3);
  // r_max = 3 at b = 1 leaves the Gaussian bound unmet but the tail check
  // passes.
  REQUIRE(fd.warnings.size() == 1);
  CHECK(fd.warnings[0].find("Gaussian") != std::string::npos);

  const double h = fd.grid.spacing();
  double norm = 0.0;
  for (int j = 0; j < fd.grid.n_points; ++j) {
    const double u = fd.levels[0].u_samples[j];
    norm += u * u * fd.grid.node(j) * h;
  }
  CHECK(2.0 * std::numbers::pi * norm == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("a deep dot lies above the free Landau level") {
  const auto fd = qring::fd_spectrum({0, 1e6, 0.0, 1.0, 0.0}, FDGrid{2.0, 8000}, 1);
  CHECK(fd.levels[0].e0 > 2.0);
}

TEST_CASE("second-order self-convergence") {
  // Cell faces land on both breakpoints for every grid below.
  for (const auto& p : {RingParams{0, 400.0, 1.0, 1.0, 0.5}, RingParams{1, 400.0, 1.0, 1.0, 0.0}}) {
    double e[3];
    const int n[3] = {2000, 4000, 8000};
    for (int k = 0; k < 3; ++k) e[k] = qring::fd_spectrum(p, FDGrid{4.0, n[k]}, 2).levels[1].e0;
    const double ratio = (e[0] - e[1]) / (e[1] - e[2]);
    CAPTURE(p.m);
    CHECK(ratio == doctest::Approx(4.0).epsilon(0.02));
  }
}

TEST_CASE("the discrete spectrum shifts exactly by a²") {
  const FDGrid grid{3.5, 8000};
  RingParams p{1, 400.0, 1.0, 1.0, 0.5};
  const auto with_a = qring::fd_spectrum(p, grid, 3);
  p.a = 0.0;
  const auto without = qring::fd_spectrum(p, grid, 3);
  for (int k = 0; k < 3; ++k) CHECK(std::fabs(with_a.levels[k].e0 - (without.levels[k].e0 - 1.0)) <= 1e-10);
}

TEST_CASE("eigenvectors match the analytic wavefunction") {
  for (const auto& p : {RingParams{0, 400.0, 1.0, 1.0, 0.5}, RingParams{2, 400.0, 1.0, 1.0, 0.1},
                        RingParams{-1, 40.0, 0.5, 2.0, 0.3}}) {
    const auto levels = qring::find_levels(p, 2);
    const auto fd = qring::fd_spectrum(p, qring::suggest_grid(p, levels.back().e0), 2);
    for (int k = 0; k < 2; ++k) {
      CAPTURE(p.m);
      CAPTURE(k);
      CHECK(std::fabs(fd.levels[k].e0 - levels[k].e0) <= 5e-3);
      CHECK(qring::eigenvector_l2_error(levels[k].solution, fd.grid, fd.levels[k].u_samples) <= 1e-3);
    }
  }
}

TEST_CASE("suggested grids bound the tail; short grids warn") {
  const RingParams p{0, 20.0, 0.0, 0.05, 0.5};
  const auto levels = qring::find_levels(p, 1);
  const FDGrid good = qring::suggest_grid(p, levels[0].e0);
  CHECK(good.r_max > 2.0);
  const auto ok = qring::fd_spectrum(p, good, 1);
  for (const auto& w : ok.warnings) CHECK(w.find("tail amplitude") == std::string::npos);
  const auto short_grid = qring::fd_spectrum(p, FDGrid{2.0, 2000}, 1);
  bool truncated = false;
  for (const auto& w : short_grid.warnings) truncated |= w.find("tail amplitude") != std::string::npos;
  CHECK(truncated);
}

}  // TEST_SUITE
