#include <doctest.h>

#include "kanpinn/error.hpp"
#include "kanpinn/sampling.hpp"

using namespace kpinn;

TEST_CASE("interior samples are strictly inside and deterministic") {
  const auto pts = sample_interior(2500, 42);
  REQUIRE(pts.size() == 2500);
  double mx = 0.0, my = 0.0;
  for (const auto& p : pts) {
    CHECK((p.x > 0.0 && p.x < 1.0 && p.y > 0.0 && p.y < 1.0));
    mx += p.x;
    my += p.y;
  }
  CHECK(std::abs(mx / 2500 - 0.5) <= 0.05);
  CHECK(std::abs(my / 2500 - 0.5) <= 0.05);
  CHECK(sample_interior(1, 7) == sample_interior(1, 7));
  CHECK(sample_interior(2500, 42) == pts);
  CHECK(sample_interior(10, 43) != sample_interior(10, 42));
}

TEST_CASE("boundary lattice") {
  const auto b = sample_boundary(50);
  REQUIRE(b.size() == 200);
  int top = 0;
  double target_sum = 0.0;
  for (const auto& p : b) {
    const int sides = (p.x == 0.0) + (p.x == 1.0) + (p.y == 0.0) + (p.y == 1.0);
    CHECK(sides == 1);
    CHECK(p.target == (p.y == 1.0 ? 1.0 : 0.0));
    CHECK((p.x >= 0.0 && p.x <= 1.0 && p.y >= 0.0 && p.y <= 1.0));
    top += p.y == 1.0;
    target_sum += p.target;
  }
  CHECK(top == 50);
  CHECK(target_sum == 50.0);
  CHECK(b[0].x == 0.01);
  CHECK(b[0].y == 0.0);

  const auto one = sample_boundary(1);
  REQUIRE(one.size() == 4);
  CHECK(one[2].x == 0.5);
  CHECK(one[2].y == 1.0);
  CHECK(one[2].target == 1.0);
  for (int n : {1, 2, 7, 50})
    for (const auto& p : sample_boundary(n))
      CHECK_FALSE(((p.x == 0.0 || p.x == 1.0) && (p.y == 0.0 || p.y == 1.0)));
}

TEST_CASE("sampling rejects empty sets") {
  CHECK_THROWS_AS(sample_interior(0, 1), ConfigError);
  CHECK_THROWS_AS(sample_boundary(0), ConfigError);
  const auto s = make_samples(2500, 50, 42);
  CHECK(s.interior.size() == 2500);
  CHECK(s.boundary.size() == 200);
}
