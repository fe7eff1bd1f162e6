#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "kanpinn/bspline.hpp"
#include "kanpinn/jet.hpp"
#include "kanpinn/point.hpp"

namespace kpinn {

enum class Backend { mlp, kan };

std::string to_string(Backend backend);
/// Accepts "mlp" or "kan"; throws ConfigError otherwise.
Backend backend_from_string(const std::string& name);

struct KanHyper {
  int grid_size = 5;
  int spline_order = 3;
  double grid_lo = -1.0;
  double grid_hi = 1.0;

  SplineBasis basis() const { return SplineBasis(grid_size, spline_order, grid_lo, grid_hi); }
  /// Parameters per edge: w_b, w_s and G + k spline coefficients.
  int edge_params() const { return grid_size + spline_order + 2; }

  friend bool operator==(const KanHyper&, const KanHyper&) = default;
};

/// Architecture plus flat parameter vector.
///
/// MLP layout, per layer l: weight matrix (w_{l+1} x w_l, row-major) then
/// the w_{l+1} biases. Hidden layers use tanh, the output layer is linear.
///
/// KAN layout, per layer l and edge (out o, in i) in o-major order:
/// [w_b, w_s, c_0 .. c_{G+k-1}]. Each edge computes
/// w_b * silu(t) + w_s * sum_j c_j B_j(t); a neuron sums its incoming edges.
/// Inputs are mapped affinely from [0, 1] onto the spline grid range.
struct NetworkModel {
  Backend backend = Backend::mlp;
  std::vector<int> layer_widths;
  std::optional<KanHyper> kan;
  std::vector<double> params;
  std::uint64_t seed = 0;
};

std::size_t parameter_count(Backend backend, std::span<const int> widths,
                            const std::optional<KanHyper>& kan = std::nullopt);

/// Throws ConfigError if widths, hyperparameters or the parameter vector
/// length are inconsistent.
void validate(const NetworkModel& model);

NetworkModel init_model(Backend backend, std::vector<int> layer_widths,
                        std::optional<KanHyper> kan, std::uint64_t seed);

/// Table 1 architectures: MLP [2,32,32,1] and KAN [2,5,5,1] with G=5, k=3.
NetworkModel init_default_model(Backend backend, std::uint64_t seed);

/// One KAN edge applied to a jet.
Jet2 kan_edge(const Jet2& t, double w_b, double w_s, std::span<const double> coeffs,
              const SplineBasis& basis);

/// Solution jet u with u_x, u_y, u_xx, u_yy.
Jet2 forward(const NetworkModel& model, const Jet2& jet_x, const Jet2& jet_y);

/// Scalar prediction u(x, y) without derivatives.
double predict(const NetworkModel& model, double x, double y);

/// Jets of `rows` quantities at `cols` points, stored as one matrix with
/// the five components side by side: component k occupies columns
/// [k*cols, (k+1)*cols). A linear layer is then a single product.
struct JetBlock {
  Eigen::MatrixXd m;
  Eigen::Index n = 0;

  void resize(Eigen::Index rows, Eigen::Index cols);
  void set_zero() { m.setZero(); }
  Eigen::Index rows() const { return m.rows(); }
  Eigen::Index cols() const { return n; }
  auto comp(int k) { return m.middleCols(k * n, n); }
  auto comp(int k) const { return m.middleCols(k * n, n); }
  double& operator()(int k, Eigen::Index row, Eigen::Index col) { return m(row, k * n + col); }
  double operator()(int k, Eigen::Index row, Eigen::Index col) const { return m(row, k * n + col); }
  Jet2 jet(Eigen::Index row, Eigen::Index col) const;
  void set(Eigen::Index row, Eigen::Index col, const Jet2& j);
};

/// Per (input neuron, point) quantities of a KAN layer reused by the reverse sweep.
struct KanNodeCache {
  SplineBasis::Window window;
  ActivationDerivatives base;
};

/// Intermediates retained by forward_batch plus scratch for backward_batch.
/// Reusing one tape across calls avoids reallocating the blocks.
struct BatchTape {
  std::vector<JetBlock> inputs;  // input block of every layer
  JetBlock output;
  std::vector<JetBlock> preact;  // MLP hidden layers
  std::vector<std::array<Eigen::MatrixXd, 3>> act;  // MLP hidden layers: f', f'', f'''
  std::vector<std::vector<KanNodeCache>> kan;  // KAN layers, index i * cols + p
  JetBlock adj, adj_next;
  // Aligned copies of one MLP layer's weights and weight gradient. Eigen
  // picks kernels by operand alignment, so working on these instead of the
  // flat parameter array keeps results independent of where it lives.
  Eigen::MatrixXd weight, weight_grad;
};

/// Output jets at every point. Fills `tape` when given.
std::vector<Jet2> forward_batch(const NetworkModel& model, std::span<const Point> points,
                                BatchTape* tape = nullptr);

/// Reverse sweep after forward_batch with the same model and points:
/// accumulates d(loss)/d(params) into `grad` given d(loss)/d(output jet)
/// per point. Deterministic for a given build.
void backward_batch(const NetworkModel& model, BatchTape& tape, std::span<const Jet2> output_adjoints,
                    std::span<double> grad);

}  // namespace kpinn
