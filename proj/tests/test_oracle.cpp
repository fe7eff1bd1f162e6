#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "kanpinn/error.hpp"
#include "kanpinn/evaluation.hpp"
#include "kanpinn/oracle.hpp"

using namespace kpinn;

TEST_CASE("series anchors") {
  CHECK(std::abs(series_solution(0.5, 0.5, 200) - 0.25) <= 1e-9);
  CHECK(series_solution(0.5, 0.75, 200) == doctest::Approx(0.54052921825950987502).epsilon(1e-12));
  CHECK(series_solution(0.25, 0.9, 200) == doctest::Approx(0.72886312710437572719).epsilon(1e-12));
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 50; ++k) {
    const double x = u(rng);
    CHECK(series_solution(x, 0.0, 200) == 0.0);
    CHECK(series_solution(x, 0.0, 1) == 0.0);
  }
  CHECK(series_solution(0.3, 1.0, 200) == 1.0);
  CHECK(series_solution(0.0, 1.0, 200) == 0.0);
  CHECK(series_solution(1.0, 1.0, 200) == 0.0);
  CHECK(series_solution(0.0, 0.4, 200) == 0.0);
  CHECK(series_solution(1.0, 0.4, 200) == 0.0);
  CHECK_THROWS_AS(series_solution(0.5, 0.5, 0), ConfigError);
  // Large harmonic counts stay finite thanks to the shifted exponent.
  CHECK(std::isfinite(series_solution(0.5, 0.999, 5000)));
}

TEST_CASE("series is harmonic") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> ux(0.05, 0.95), uy(0.05, 0.9);
  const double h = 1e-4;
  for (int k = 0; k < 100; ++k) {
    const double x = ux(rng), y = uy(rng);
    const double lap = (series_solution(x + h, y, 200) + series_solution(x - h, y, 200) +
                        series_solution(x, y + h, 200) + series_solution(x, y - h, 200) -
                        4 * series_solution(x, y, 200)) /
                       (h * h);
    CHECK(std::abs(lap) <= 1e-4);
  }
}

TEST_CASE("truncation tail bound") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ux(0.0, 1.0), uy(0.0, 0.95);
  for (int m : {4, 8, 16, 100}) {
    for (int k = 0; k < 50; ++k) {
      const double x = ux(rng), y = uy(rng);
      const double gap = std::abs(series_solution(x, y, 2 * m) - series_solution(x, y, m));
      CHECK(gap <= std::exp(-(2 * m + 1) * std::numbers::pi * (1 - y)));
    }
  }
}

TEST_CASE("oracle grid") {
  const auto g = oracle_grid(101, 200);
  REQUIRE(g.values().size() == 10201);
  for (int i = 0; i < 101; ++i) CHECK(g.at(i, 0) == 0.0);
  for (int j = 0; j < 101; ++j) {
    CHECK(g.at(0, j) == 0.0);
    CHECK(g.at(100, j) == 0.0);
  }
  for (int i = 1; i < 100; ++i) CHECK(g.at(i, 100) == 1.0);
  for (int j = 0; j < 101; ++j)
    for (int i = 0; i < 101; ++i) {
      CHECK(std::abs(g.at(i, j) - g.at(100 - i, j)) <= 1e-12);
      CHECK((g.at(i, j) >= 0.0 && g.at(i, j) <= 1.0));
    }
  CHECK(g.at(50, 50) == doctest::Approx(0.25).epsilon(1e-9));
  CHECK_THROWS_AS(oracle_grid(1, 10), ConfigError);
}

TEST_CASE("finite-difference solver") {
  const auto small = fd_solve(3, 100, 1e-14);
  CHECK(small.at(1, 1) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK_THROWS_AS(fd_solve(2, 10, 1e-8), ConfigError);
  CHECK_THROWS_AS(fd_solve(51, 1, 1e-10), ConvergenceError);
  try {
    fd_solve(51, 1, 1e-10);
  } catch (const ConvergenceError& e) {
    CHECK(e.residual() > 1e-10);
  }

  const auto fd = fd_solve(101, 20000, 1e-10);
  const auto truth = oracle_grid(101, 400);
  const auto diff = abs_diff(fd, truth);
  CHECK(diff.stats.max_abs_below_y95 <= 5e-3);
  for (double v : fd.values()) CHECK((v >= 0.0 && v <= 1.0));
}
