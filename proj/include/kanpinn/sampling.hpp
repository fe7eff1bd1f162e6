#pragma once

#include <cstdint>
#include <vector>

#include "kanpinn/point.hpp"

namespace kpinn {

struct BoundaryPoint {
  double x = 0.0;
  double y = 0.0;
  double target = 0.0;  // prescribed potential g(x, y)
};

/// Collocation points: interior z_i and boundary z_b with their targets.
struct SampleSet {
  std::vector<Point> interior;
  std::vector<BoundaryPoint> boundary;
};

/// Potential on the excitation plane y = 1; the other three sides are grounded.
inline constexpr double kExcitationPotential = 1.0;

/// n points i.i.d. uniform over the open unit square, fixed by `seed`.
std::vector<Point> sample_interior(int n, std::uint64_t seed);

/// per_side evenly spaced points on each side at (j + 0.5) / per_side,
/// ordered y = 0, x = 1, y = 1, x = 0. Corners are never produced.
std::vector<BoundaryPoint> sample_boundary(int per_side);

SampleSet make_samples(int n_interior, int per_side, std::uint64_t seed);

}  // namespace kpinn
