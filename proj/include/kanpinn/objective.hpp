#pragma once

#include <span>

#include "kanpinn/gradient.hpp"
#include "kanpinn/network.hpp"
#include "kanpinn/sampling.hpp"

namespace kpinn {

/// total = alpha * interior + boundary.
struct LossBreakdown {
  double interior = 0.0;
  double boundary = 0.0;
  double total = 0.0;
  double alpha = 1.0;
};

/// f = -(u_xx + u_yy) at a point.
double pde_residual(const NetworkModel& model, const Point& point);

/// Mean squared residual. Terms are summed in ascending order, so the
/// result depends only on the multiset of residuals.
double interior_loss(const NetworkModel& model, std::span<const Point> points);

/// Mean of (u - target)^2, summed in ascending order like interior_loss.
double boundary_loss(const NetworkModel& model, std::span<const BoundaryPoint> points);

LossBreakdown total_loss(const NetworkModel& model, const SampleSet& samples, double alpha);

/// The same loss as a JetLoss over interior points followed by boundary
/// points, for gradient evaluation. When `last` is given, every reduce call
/// stores its breakdown there.
JetLoss pinn_jet_loss(const SampleSet& samples, double alpha, LossBreakdown* last = nullptr);

}  // namespace kpinn
