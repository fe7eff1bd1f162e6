#include "kanpinn/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "kanpinn/error.hpp"

namespace kpinn {

namespace {

/// Dirichlet data on the boundary of the unit square.
double boundary_value(double x, double y) {
  if (y >= 1.0 && x > 0.0 && x < 1.0) return 1.0;
  return 0.0;
}

bool on_boundary(double x, double y) { return x <= 0.0 || x >= 1.0 || y <= 0.0 || y >= 1.0; }

}  // namespace

double series_solution(double x, double y, int n_terms) {
  if (n_terms < 1) throw ConfigError("n_terms must be at least 1");
  if (on_boundary(x, y)) return boundary_value(x, y);
  constexpr double pi = std::numbers::pi;
  double sum = 0.0;
  for (int m = 0; m < n_terms; ++m) {
    const double k = (2 * m + 1) * pi;
    // sinh(k y)/sinh(k) = e^{k(y-1)} (1 - e^{-2ky}) / (1 - e^{-2k})
    const double ratio = std::exp(k * (y - 1.0)) * (-std::expm1(-2.0 * k * y)) / (-std::expm1(-2.0 * k));
    sum += 4.0 / k * std::sin(k * x) * ratio;
  }
  return sum;
}

GridField oracle_grid(int n, int n_terms) {
  GridField field(n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) field.at(i, j) = series_solution(field.x(i), field.y(j), n_terms);
  return field;
}

GridField fd_solve(int n, int max_sweeps, double tol) {
  if (n < 3) throw ConfigError("fd_solve needs n >= 3");
  if (max_sweeps < 1) throw ConfigError("max_sweeps must be at least 1");
  GridField u(n);
  for (int i = 0; i < n; ++i) u.at(i, n - 1) = boundary_value(u.x(i), 1.0);
  const double omega = 2.0 / (1.0 + std::sin(std::numbers::pi / (n - 1)));
  double largest = 0.0;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    largest = 0.0;
    for (int j = 1; j < n - 1; ++j) {
      for (int i = 1; i < n - 1; ++i) {
        const double gs = 0.25 * (u.at(i - 1, j) + u.at(i + 1, j) + u.at(i, j - 1) + u.at(i, j + 1));
        const double update = omega * (gs - u.at(i, j));
        u.at(i, j) += update;
        largest = std::max(largest, std::abs(update));
      }
    }
    if (largest <= tol) return u;
  }
  throw ConvergenceError("fd_solve did not converge in " + std::to_string(max_sweeps) + " sweeps", largest);
}

}  // namespace kpinn
