#include "kanpinn/sampling.hpp"

#include <random>

#include "kanpinn/error.hpp"

namespace kpinn {

std::vector<Point> sample_interior(int n, std::uint64_t seed) {
  if (n < 1) throw ConfigError("interior sample count must be at least 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  // uniform_real_distribution is half-open; redraw the (rare) exact zero.
  auto draw = [&] {
    double v = 0.0;
    while (v == 0.0) v = unit(rng);
    return v;
  };
  std::vector<Point> points(static_cast<std::size_t>(n));
  for (auto& p : points) {
    p.x = draw();
    p.y = draw();
  }
  return points;
}

std::vector<BoundaryPoint> sample_boundary(int per_side) {
  if (per_side < 1) throw ConfigError("boundary points per side must be at least 1");
  std::vector<BoundaryPoint> points;
  points.reserve(4 * static_cast<std::size_t>(per_side));
  auto along = [per_side](int j) { return (j + 0.5) / per_side; };
  for (int j = 0; j < per_side; ++j) points.push_back({along(j), 0.0, 0.0});
  for (int j = 0; j < per_side; ++j) points.push_back({1.0, along(j), 0.0});
  for (int j = 0; j < per_side; ++j) points.push_back({along(j), 1.0, kExcitationPotential});
  for (int j = 0; j < per_side; ++j) points.push_back({0.0, along(j), 0.0});
  return points;
}

SampleSet make_samples(int n_interior, int per_side, std::uint64_t seed) {
  return {sample_interior(n_interior, seed), sample_boundary(per_side)};
}

}  // namespace kpinn
