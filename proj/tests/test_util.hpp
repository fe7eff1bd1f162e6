#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "kanpinn/network.hpp"
#include "kanpinn/point.hpp"

namespace kpinn::test {

inline double rel_err(double value, double reference, double floor) {
  return std::abs(value - reference) / std::max(std::abs(reference), floor);
}

inline std::vector<Point> random_points(int n, std::uint64_t seed, double lo = 0.05, double hi = 0.95) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<Point> pts(static_cast<std::size_t>(n));
  for (auto& p : pts) {
    p.x = u(rng);
    p.y = u(rng);
  }
  return pts;
}

/// 5-point stencil Laplacian of the scalar prediction.
inline double stencil_laplacian(const NetworkModel& model, double x, double y, double h) {
  const double c = predict(model, x, y);
  return (predict(model, x + h, y) + predict(model, x - h, y) + predict(model, x, y + h) +
          predict(model, x, y - h) - 4.0 * c) /
         (h * h);
}

/// Model whose every output is exactly zero.
inline NetworkModel zero_model(Backend backend) {
  NetworkModel m = init_default_model(backend, 1);
  std::fill(m.params.begin(), m.params.end(), 0.0);
  return m;
}

}  // namespace kpinn::test
