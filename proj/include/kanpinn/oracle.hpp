#pragma once

#include "kanpinn/grid_field.hpp"

namespace kpinn {

/// Separation-of-variables solution of Laplace's equation on the unit
/// square with u = 1 on y = 1 and u = 0 on the other sides:
///   u(x, y) = sum over odd m of 4/(m pi) sin(m pi x) sinh(m pi y)/sinh(m pi).
/// `n_terms` counts odd harmonics. Boundary nodes return the boundary
/// datum; the two top corners take the side-wall value 0.
double series_solution(double x, double y, int n_terms);

/// series_solution at every node of an n x n grid.
GridField oracle_grid(int n, int n_terms);

/// 5-point finite-difference solution of the same problem by SOR with the
/// optimal relaxation factor for the square. Sweeps run row-major until the
/// largest nodal update is <= tol; throws ConvergenceError otherwise.
GridField fd_solve(int n, int max_sweeps, double tol);

}  // namespace kpinn
