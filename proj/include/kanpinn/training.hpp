#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <span>
#include <vector>

#include "kanpinn/network.hpp"
#include "kanpinn/objective.hpp"

namespace kpinn {

struct AdamSettings {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

struct AdamState {
  std::vector<double> m;
  std::vector<double> v;
  std::int64_t t = 0;

  explicit AdamState(std::size_t n = 0) : m(n, 0.0), v(n, 0.0) {}
};

/// One bias-corrected Adam update in place. Throws DivergenceError on a
/// non-finite gradient entry (params and state are left untouched).
void adam_step(std::span<double> params, std::span<const double> grads, AdamState& state,
               const AdamSettings& settings);

struct TrainConfig {
  Backend backend = Backend::mlp;
  int steps = 20000;
  // lr and alpha are tuned for the corner-dominated boundary fit: at
  // alpha = 1 both networks trade the side walls near the excitation plane
  // for a smaller Laplacian residual.
  double learning_rate = 5e-3;
  double alpha = 0.01;
  int n_interior = 2500;
  int per_side = 50;
  std::uint64_t seed = 42;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_epsilon = 1e-8;
  int log_every = 100;
};

/// Throws ConfigError when an invariant of TrainConfig is violated.
void validate(const TrainConfig& config);

struct HistoryRecord {
  int step = 0;  // number of updates applied
  double interior = 0.0;
  double boundary = 0.0;
  double total = 0.0;
};

struct TrainHistory {
  std::vector<HistoryRecord> records;
};

struct TrainResult {
  NetworkModel model;
  TrainHistory history;
  LossBreakdown initial;  // loss of the freshly initialised model
  LossBreakdown final;
};

/// Full-batch Adam on a fixed sample set. Records the loss after every
/// log_every-th update and after the last one. Throws DivergenceError
/// carrying the step index if the loss or gradient becomes non-finite.
TrainResult train(const TrainConfig& config);

/// Same as train() starting from the given model instead of init_default_model.
TrainResult train(const TrainConfig& config, NetworkModel model,
                  const std::function<void(const HistoryRecord&)>& on_record = {});

/// CSV with header `step,interior,boundary,total`, values at 17 significant digits.
void write_history_csv(const TrainHistory& history, std::ostream& out);

}  // namespace kpinn
