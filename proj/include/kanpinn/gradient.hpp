#pragma once

#include <functional>
#include <span>
#include <vector>

#include "kanpinn/jet.hpp"
#include "kanpinn/network.hpp"
#include "kanpinn/point.hpp"

namespace kpinn {

/// d(loss)/d(params), same ordering as NetworkModel::params.
using GradientVector = std::vector<double>;

/// A loss defined through the network's output jets at a batch of points.
///
/// `reduce` receives the output jet at every point, returns the loss and
/// writes d(loss)/d(jet) for each point into `adjoints` (same length).
struct JetLoss {
  std::vector<Point> points;
  std::function<double(std::span<const Jet2> outputs, std::span<Jet2> adjoints)> reduce;
};

struct ValueAndGradient {
  double value = 0.0;
  GradientVector gradient;
};

/// Forward evaluation only. Throws DivergenceError on a non-finite loss.
double loss_value(const NetworkModel& model, const JetLoss& loss);

/// Loss and its parameter gradient: forward jets over the batch, then a
/// reverse sweep through the jet computation. Throws DivergenceError if
/// the loss or any gradient entry is non-finite.
ValueAndGradient value_and_gradient(const NetworkModel& model, const JetLoss& loss);

/// As above, reusing `workspace` between calls.
ValueAndGradient value_and_gradient(const NetworkModel& model, const JetLoss& loss, BatchTape& workspace);

GradientVector parameter_gradient(const NetworkModel& model, const JetLoss& loss);

}  // namespace kpinn
