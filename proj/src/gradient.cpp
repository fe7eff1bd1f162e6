#include "kanpinn/gradient.hpp"

#include <cmath>

#include "kanpinn/error.hpp"

namespace kpinn {

double loss_value(const NetworkModel& model, const JetLoss& loss) {
  const auto outputs = forward_batch(model, loss.points);
  std::vector<Jet2> adjoints(outputs.size());
  const double value = loss.reduce(outputs, adjoints);
  if (!std::isfinite(value)) throw DivergenceError("non-finite loss", 0);
  return value;
}

ValueAndGradient value_and_gradient(const NetworkModel& model, const JetLoss& loss) {
  BatchTape tape;
  return value_and_gradient(model, loss, tape);
}

ValueAndGradient value_and_gradient(const NetworkModel& model, const JetLoss& loss, BatchTape& tape) {
  const auto outputs = forward_batch(model, loss.points, &tape);
  std::vector<Jet2> adjoints(outputs.size());
  ValueAndGradient result;
  result.value = loss.reduce(outputs, adjoints);
  if (!std::isfinite(result.value)) throw DivergenceError("non-finite loss", 0);
  result.gradient.assign(model.params.size(), 0.0);
  backward_batch(model, tape, adjoints, result.gradient);
  for (double g : result.gradient)
    if (!std::isfinite(g)) throw DivergenceError("non-finite gradient", 0);
  return result;
}

GradientVector parameter_gradient(const NetworkModel& model, const JetLoss& loss) {
  return value_and_gradient(model, loss).gradient;
}

}  // namespace kpinn
