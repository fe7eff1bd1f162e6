#include "kanpinn/training.hpp"

#include <cmath>
#include <cstdio>

#include "kanpinn/error.hpp"
#include "kanpinn/gradient.hpp"
#include "kanpinn/sampling.hpp"

namespace kpinn {

void adam_step(std::span<double> params, std::span<const double> grads, AdamState& state,
               const AdamSettings& settings) {
  if (grads.size() != params.size() || state.m.size() != params.size() || state.v.size() != params.size())
    throw ConfigError("adam_step: parameter, gradient and state sizes differ");
  for (double g : grads)
    if (!std::isfinite(g)) throw DivergenceError("non-finite gradient entry", static_cast<long>(state.t + 1));

  ++state.t;
  const double c1 = 1.0 - std::pow(settings.beta1, static_cast<double>(state.t));
  const double c2 = 1.0 - std::pow(settings.beta2, static_cast<double>(state.t));
  for (std::size_t i = 0; i < params.size(); ++i) {
    state.m[i] = settings.beta1 * state.m[i] + (1.0 - settings.beta1) * grads[i];
    state.v[i] = settings.beta2 * state.v[i] + (1.0 - settings.beta2) * grads[i] * grads[i];
    const double m_hat = state.m[i] / c1;
    const double v_hat = state.v[i] / c2;
    params[i] -= settings.learning_rate * m_hat / (std::sqrt(v_hat) + settings.epsilon);
  }
}

void validate(const TrainConfig& c) {
  if (c.steps < 1) throw ConfigError("steps must be at least 1");
  if (!(c.learning_rate > 0.0)) throw ConfigError("learning_rate must be positive");
  if (!(c.alpha > 0.0)) throw ConfigError("alpha must be positive");
  if (c.n_interior < 1) throw ConfigError("n_interior must be at least 1");
  if (c.per_side < 1) throw ConfigError("per_side must be at least 1");
  if (!(c.adam_beta1 >= 0.0 && c.adam_beta1 < 1.0)) throw ConfigError("adam_beta1 must be in [0, 1)");
  if (!(c.adam_beta2 >= 0.0 && c.adam_beta2 < 1.0)) throw ConfigError("adam_beta2 must be in [0, 1)");
  if (!(c.adam_epsilon > 0.0)) throw ConfigError("adam_epsilon must be positive");
  if (c.log_every < 1) throw ConfigError("log_every must be at least 1");
}

TrainResult train(const TrainConfig& config) {
  validate(config);
  return train(config, init_default_model(config.backend, config.seed));
}

TrainResult train(const TrainConfig& config, NetworkModel model,
                  const std::function<void(const HistoryRecord&)>& on_record) {
  validate(config);
  validate(model);
  const SampleSet samples = make_samples(config.n_interior, config.per_side, config.seed);
  LossBreakdown breakdown;
  const JetLoss loss = pinn_jet_loss(samples, config.alpha, &breakdown);
  const AdamSettings adam{config.learning_rate, config.adam_beta1, config.adam_beta2, config.adam_epsilon};
  AdamState state(model.params.size());
  BatchTape workspace;

  TrainResult result;
  auto record = [&](int step) {
    const HistoryRecord r{step, breakdown.interior, breakdown.boundary, breakdown.total};
    result.history.records.push_back(r);
    if (on_record) on_record(r);
  };

  for (int step = 0; step < config.steps; ++step) {
    ValueAndGradient vg;
    try {
      vg = value_and_gradient(model, loss, workspace);
    } catch (const DivergenceError&) {
      throw DivergenceError("training diverged", step);
    }
    // The loss just computed belongs to the model after `step` updates.
    if (step == 0) result.initial = breakdown;
    else if (step % config.log_every == 0) record(step);
    try {
      adam_step(model.params, vg.gradient, state, adam);
    } catch (const DivergenceError&) {
      throw DivergenceError("training diverged", step + 1);
    }
  }
  try {
    loss_value(model, loss);
  } catch (const DivergenceError&) {
    throw DivergenceError("training diverged", config.steps);
  }
  for (double p : model.params)
    if (!std::isfinite(p)) throw DivergenceError("non-finite parameter", config.steps);
  result.final = breakdown;
  record(config.steps);
  result.model = std::move(model);
  return result;
}

void write_history_csv(const TrainHistory& history, std::ostream& out) {
  out << "step,interior,boundary,total\n";
  char line[128];
  for (const auto& r : history.records) {
    std::snprintf(line, sizeof line, "%d,%.17g,%.17g,%.17g\n", r.step, r.interior, r.boundary, r.total);
    out << line;
  }
}

}  // namespace kpinn
