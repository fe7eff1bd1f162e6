#include "kanpinn/network.hpp"

#include <cmath>
#include <random>

#include "kanpinn/error.hpp"

namespace kpinn {

namespace {

using RowMajorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

enum Component { kVal = 0, kDx = 1, kDy = 2, kDxx = 3, kDyy = 4 };

void check_widths(std::span<const int> widths) {
  if (widths.size() < 2) throw ConfigError("layer_widths needs at least an input and an output layer");
  if (widths.front() != 2) throw ConfigError("first layer width must be 2 (x, y)");
  if (widths.back() != 1) throw ConfigError("last layer width must be 1 (u)");
  for (int w : widths)
    if (w < 1) throw ConfigError("layer widths must be positive");
}

/// Start of each layer's parameter block.
std::vector<std::size_t> layer_offsets(const NetworkModel& model) {
  const auto& w = model.layer_widths;
  std::vector<std::size_t> offsets;
  std::size_t offset = 0;
  for (std::size_t l = 0; l + 1 < w.size(); ++l) {
    offsets.push_back(offset);
    const std::size_t edges = static_cast<std::size_t>(w[l]) * w[l + 1];
    offset += model.backend == Backend::mlp ? edges + w[l + 1]
                                            : edges * model.kan->edge_params();
  }
  return offsets;
}

/// Affine map of [0, 1] onto the spline grid range.
std::pair<double, double> kan_input_map(const KanHyper& kan) {
  return {kan.grid_lo, kan.grid_hi - kan.grid_lo};
}

/// MLP inputs are centred on [-1, 1] as well, so tanh units start out of
/// their linear regime.
constexpr double kMlpShift = -1.0;
constexpr double kMlpScale = 2.0;

}  // namespace

std::string to_string(Backend backend) { return backend == Backend::mlp ? "mlp" : "kan"; }

Backend backend_from_string(const std::string& name) {
  if (name == "mlp") return Backend::mlp;
  if (name == "kan") return Backend::kan;
  throw ConfigError("unknown backend '" + name + "' (expected mlp or kan)");
}

std::size_t parameter_count(Backend backend, std::span<const int> widths,
                            const std::optional<KanHyper>& kan) {
  check_widths(widths);
  std::size_t count = 0;
  for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
    const std::size_t edges = static_cast<std::size_t>(widths[l]) * widths[l + 1];
    if (backend == Backend::mlp) {
      count += edges + widths[l + 1];
    } else {
      if (!kan) throw ConfigError("KAN backend requires kan_hyper");
      count += edges * kan->edge_params();
    }
  }
  return count;
}

void validate(const NetworkModel& model) {
  check_widths(model.layer_widths);
  if (model.backend == Backend::kan) {
    if (!model.kan) throw ConfigError("KAN backend requires kan_hyper");
    model.kan->basis();  // checks G, k and the range
  } else if (model.kan) {
    throw ConfigError("kan_hyper is only valid for the KAN backend");
  }
  const std::size_t expected = parameter_count(model.backend, model.layer_widths, model.kan);
  if (model.params.size() != expected)
    throw ConfigError("parameter vector has " + std::to_string(model.params.size()) +
                      " entries, architecture needs " + std::to_string(expected));
}

NetworkModel init_model(Backend backend, std::vector<int> layer_widths, std::optional<KanHyper> kan,
                        std::uint64_t seed) {
  NetworkModel model;
  model.backend = backend;
  model.layer_widths = std::move(layer_widths);
  model.kan = backend == Backend::kan ? kan : std::nullopt;
  if (backend == Backend::kan && !model.kan) throw ConfigError("KAN backend requires kan_hyper");
  model.seed = seed;
  model.params.assign(parameter_count(backend, model.layer_widths, model.kan), 0.0);
  validate(model);

  std::mt19937_64 rng(seed);
  const auto& w = model.layer_widths;
  auto it = model.params.begin();
  for (std::size_t l = 0; l + 1 < w.size(); ++l) {
    const double limit = std::sqrt(6.0 / (w[l] + w[l + 1]));
    std::uniform_real_distribution<double> glorot(-limit, limit);
    const int edges = w[l] * w[l + 1];
    if (backend == Backend::mlp) {
      for (int e = 0; e < edges; ++e) *it++ = glorot(rng);
      it += w[l + 1];  // biases stay zero
    } else {
      std::normal_distribution<double> coeff(0.0, 0.1);
      const int n_coeffs = model.kan->grid_size + model.kan->spline_order;
      for (int e = 0; e < edges; ++e) {
        *it++ = glorot(rng);  // w_b
        *it++ = 1.0;          // w_s
        for (int j = 0; j < n_coeffs; ++j) *it++ = coeff(rng);
      }
    }
  }
  return model;
}

NetworkModel init_default_model(Backend backend, std::uint64_t seed) {
  if (backend == Backend::mlp) return init_model(backend, {2, 32, 32, 1}, std::nullopt, seed);
  return init_model(backend, {2, 5, 5, 1}, KanHyper{}, seed);
}

Jet2 kan_edge(const Jet2& t, double w_b, double w_s, std::span<const double> coeffs,
              const SplineBasis& basis) {
  if (coeffs.size() != static_cast<std::size_t>(basis.size()))
    throw ConfigError("kan_edge: coefficient count does not match the basis size");
  const auto base = activation_derivatives(Activation::silu, t.val);
  const auto win = basis.window(t.val, 2);
  std::array<double, 3> spline{};
  for (int d = 0; d < 3; ++d)
    for (int r = 0; r < win.count; ++r) spline[d] += coeffs[win.first + r] * win.ders[d][r];
  return compose(t, w_b * base.f + w_s * spline[0], w_b * base.d1 + w_s * spline[1],
                 w_b * base.d2 + w_s * spline[2]);
}

Jet2 forward(const NetworkModel& model, const Jet2& jet_x, const Jet2& jet_y) {
  const auto& w = model.layer_widths;
  const auto offsets = layer_offsets(model);
  const double* params = model.params.data();

  std::vector<Jet2> a{jet_x, jet_y};
  if (model.backend == Backend::mlp) {
    for (auto& j : a) j = kMlpScale * j + Jet2::constant(kMlpShift);
    for (std::size_t l = 0; l + 1 < w.size(); ++l) {
      const int in = w[l];
      const int out = w[l + 1];
      const double* W = params + offsets[l];
      const double* b = W + static_cast<std::ptrdiff_t>(in) * out;
      const bool hidden = l + 2 < w.size();
      std::vector<Jet2> z(out);
      for (int o = 0; o < out; ++o) {
        Jet2 acc = Jet2::constant(b[o]);
        for (int i = 0; i < in; ++i) acc += W[o * in + i] * a[i];
        z[o] = hidden ? unary(acc, Activation::tanh) : acc;
      }
      a = std::move(z);
    }
    return a[0];
  }

  const KanHyper& kan = *model.kan;
  const SplineBasis basis = kan.basis();
  const auto [shift, scale] = kan_input_map(kan);
  for (auto& j : a) j = scale * j + Jet2::constant(shift);
  const int stride = kan.edge_params();
  for (std::size_t l = 0; l + 1 < w.size(); ++l) {
    const int in = w[l];
    const int out = w[l + 1];
    std::vector<Jet2> z(out);
    for (int o = 0; o < out; ++o) {
      for (int i = 0; i < in; ++i) {
        const double* edge = params + offsets[l] + static_cast<std::size_t>(o * in + i) * stride;
        z[o] += kan_edge(a[i], edge[0], edge[1],
                         std::span<const double>(edge + 2, static_cast<std::size_t>(stride - 2)), basis);
      }
    }
    a = std::move(z);
  }
  return a[0];
}

double predict(const NetworkModel& model, double x, double y) {
  const auto [jx, jy] = seed_input(x, y);
  return forward(model, jx, jy).val;
}

void JetBlock::resize(Eigen::Index rows, Eigen::Index cols) {
  n = cols;
  m.resize(rows, 5 * cols);
}

Jet2 JetBlock::jet(Eigen::Index row, Eigen::Index col) const {
  return {m(row, col), m(row, n + col), m(row, 2 * n + col), m(row, 3 * n + col), m(row, 4 * n + col)};
}

void JetBlock::set(Eigen::Index row, Eigen::Index col, const Jet2& j) {
  m(row, col) = j.val;
  m(row, n + col) = j.dx;
  m(row, 2 * n + col) = j.dy;
  m(row, 3 * n + col) = j.dxx;
  m(row, 4 * n + col) = j.dyy;
}

namespace {

void fill_inputs(JetBlock& a, std::span<const Point> points, double shift, double scale) {
  const auto n = static_cast<Eigen::Index>(points.size());
  a.resize(2, n);
  a.set_zero();
  for (Eigen::Index p = 0; p < n; ++p) {
    a(kVal, 0, p) = shift + scale * points[p].x;
    a(kVal, 1, p) = shift + scale * points[p].y;
    a(kDx, 0, p) = scale;
    a(kDy, 1, p) = scale;
  }
}

std::vector<Jet2> output_jets(const JetBlock& out) {
  std::vector<Jet2> jets(static_cast<std::size_t>(out.cols()));
  for (Eigen::Index p = 0; p < out.cols(); ++p) jets[p] = out.jet(0, p);
  return jets;
}

void fill_adjoints(JetBlock& g, std::span<const Jet2> adjoints) {
  g.resize(1, static_cast<Eigen::Index>(adjoints.size()));
  for (std::size_t p = 0; p < adjoints.size(); ++p) g.set(0, static_cast<Eigen::Index>(p), adjoints[p]);
}

void mlp_forward_batch(const NetworkModel& model, std::span<const Point> points, BatchTape& tape) {
  const auto& w = model.layer_widths;
  const auto offsets = layer_offsets(model);
  const auto n = static_cast<Eigen::Index>(points.size());
  const std::size_t layers = w.size() - 1;
  tape.inputs.resize(layers);
  tape.preact.resize(layers - 1);
  tape.act.resize(layers - 1);
  fill_inputs(tape.inputs[0], points, kMlpShift, kMlpScale);
  for (std::size_t l = 0; l < layers; ++l) {
    const int in = w[l];
    const int out = w[l + 1];
    tape.weight = Eigen::Map<const RowMajorMatrix>(model.params.data() + offsets[l], out, in);
    const double* b = model.params.data() + offsets[l] + static_cast<std::size_t>(in) * out;
    const bool hidden = l + 1 < layers;
    JetBlock& z = hidden ? tape.preact[l] : tape.output;
    z.resize(out, n);
    z.m.noalias() = tape.weight * tape.inputs[l].m;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index r = 0; r < out; ++r) z(kVal, r, p) += b[r];
    if (!hidden) break;

    JetBlock& h = tape.inputs[l + 1];
    h.resize(out, n);
    auto& act = tape.act[l];
    for (auto& a : act) a.resize(out, n);
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index r = 0; r < out; ++r) {
        const auto d = activation_derivatives(Activation::tanh, z(kVal, r, p));
        const double zdx = z(kDx, r, p);
        const double zdy = z(kDy, r, p);
        h(kVal, r, p) = d.f;
        h(kDx, r, p) = d.d1 * zdx;
        h(kDy, r, p) = d.d1 * zdy;
        h(kDxx, r, p) = d.d2 * zdx * zdx + d.d1 * z(kDxx, r, p);
        h(kDyy, r, p) = d.d2 * zdy * zdy + d.d1 * z(kDyy, r, p);
        act[0](r, p) = d.d1;
        act[1](r, p) = d.d2;
        act[2](r, p) = d.d3;
      }
    }
  }
}

void mlp_backward_batch(const NetworkModel& model, BatchTape& tape, std::span<double> grad) {
  const auto& w = model.layer_widths;
  const auto offsets = layer_offsets(model);
  const Eigen::Index n = tape.output.cols();
  JetBlock* g = &tape.adj;  // adjoint of the current layer's pre-activation
  JetBlock* gh = &tape.adj_next;
  for (std::size_t l = w.size() - 1; l-- > 0;) {
    const int in = w[l];
    const int out = w[l + 1];
    tape.weight_grad.noalias() = g->m * tape.inputs[l].m.transpose();
    double* gW = grad.data() + offsets[l];
    for (int r = 0; r < out; ++r)
      for (int c = 0; c < in; ++c) gW[static_cast<std::size_t>(r) * in + c] += tape.weight_grad(r, c);
    // Bias gradient: plain left-to-right sum over the batch.
    double* gb = gW + static_cast<std::size_t>(in) * out;
    for (int r = 0; r < out; ++r) {
      double sum = 0.0;
      for (Eigen::Index p = 0; p < n; ++p) sum += (*g)(kVal, r, p);
      gb[r] += sum;
    }
    if (l == 0) break;

    tape.weight = Eigen::Map<const RowMajorMatrix>(model.params.data() + offsets[l], out, in);
    gh->resize(in, n);
    gh->m.noalias() = tape.weight.transpose() * g->m;
    const JetBlock& Z = tape.preact[l - 1];
    const auto& act = tape.act[l - 1];
    // Turn the adjoint of the activation output into that of its input, in place.
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index r = 0; r < in; ++r) {
        const double s1 = act[0](r, p), s2 = act[1](r, p), s3 = act[2](r, p);
        const double zdx = Z(kDx, r, p), zdy = Z(kDy, r, p);
        JetBlock& G = *gh;
        const double gv = G(kVal, r, p), gdx = G(kDx, r, p), gdy = G(kDy, r, p);
        const double gdxx = G(kDxx, r, p), gdyy = G(kDyy, r, p);
        const double a1 = gdx * zdx + gdy * zdy + gdxx * Z(kDxx, r, p) + gdyy * Z(kDyy, r, p);
        const double a2 = gdxx * zdx * zdx + gdyy * zdy * zdy;
        G(kVal, r, p) = s1 * gv + s2 * a1 + s3 * a2;
        G(kDx, r, p) = s1 * gdx + 2.0 * s2 * gdxx * zdx;
        G(kDy, r, p) = s1 * gdy + 2.0 * s2 * gdyy * zdy;
        G(kDxx, r, p) = s1 * gdxx;
        G(kDyy, r, p) = s1 * gdyy;
      }
    }
    std::swap(g, gh);
  }
}

void kan_forward_batch(const NetworkModel& model, std::span<const Point> points, BatchTape& tape) {
  const auto& w = model.layer_widths;
  const KanHyper& kan = *model.kan;
  const SplineBasis basis = kan.basis();
  const auto offsets = layer_offsets(model);
  const int stride = kan.edge_params();
  const auto n = static_cast<Eigen::Index>(points.size());
  const std::size_t layers = w.size() - 1;
  const auto [shift, scale] = kan_input_map(kan);
  tape.inputs.resize(layers);
  tape.kan.resize(layers);
  fill_inputs(tape.inputs[0], points, shift, scale);
  for (std::size_t l = 0; l < layers; ++l) {
    const int in = w[l];
    const int out = w[l + 1];
    const JetBlock& a = tape.inputs[l];
    JetBlock& z = l + 1 < layers ? tape.inputs[l + 1] : tape.output;
    z.resize(out, n);
    z.set_zero();
    auto& cache = tape.kan[l];
    cache.resize(static_cast<std::size_t>(in) * n);
    for (Eigen::Index p = 0; p < n; ++p) {
      for (int i = 0; i < in; ++i) {
        const Jet2 t = a.jet(i, p);
        auto& node = cache[static_cast<std::size_t>(i) * n + p];
        node.base = activation_derivatives(Activation::silu, t.val);
        node.window = basis.window(t.val, 3);
        const auto& win = node.window;
        for (int o = 0; o < out; ++o) {
          const double* edge = model.params.data() + offsets[l] + static_cast<std::size_t>(o * in + i) * stride;
          const double* coeffs = edge + 2 + win.first;
          double s0 = 0.0, s1 = 0.0, s2 = 0.0;
          for (int r = 0; r < win.count; ++r) {
            s0 += coeffs[r] * win.ders[0][r];
            s1 += coeffs[r] * win.ders[1][r];
            s2 += coeffs[r] * win.ders[2][r];
          }
          const double f0 = edge[0] * node.base.f + edge[1] * s0;
          const double f1 = edge[0] * node.base.d1 + edge[1] * s1;
          const double f2 = edge[0] * node.base.d2 + edge[1] * s2;
          z(kVal, o, p) += f0;
          z(kDx, o, p) += f1 * t.dx;
          z(kDy, o, p) += f1 * t.dy;
          z(kDxx, o, p) += f2 * t.dx * t.dx + f1 * t.dxx;
          z(kDyy, o, p) += f2 * t.dy * t.dy + f1 * t.dyy;
        }
      }
    }
  }
}

void kan_backward_batch(const NetworkModel& model, BatchTape& tape, std::span<double> grad) {
  const auto& w = model.layer_widths;
  const KanHyper& kan = *model.kan;
  const auto offsets = layer_offsets(model);
  const int stride = kan.edge_params();
  const Eigen::Index n = tape.output.cols();
  JetBlock* g = &tape.adj;
  JetBlock* gin = &tape.adj_next;
  for (std::size_t l = w.size() - 1; l-- > 0;) {
    const int in = w[l];
    const int out = w[l + 1];
    const JetBlock& A = tape.inputs[l];
    const auto& cache = tape.kan[l];
    const bool propagate = l > 0;
    if (propagate) gin->resize(in, n);
    for (Eigen::Index p = 0; p < n; ++p) {
      for (int i = 0; i < in; ++i) {
        const Jet2 t = A.jet(i, p);
        const auto& node = cache[static_cast<std::size_t>(i) * n + p];
        const auto& win = node.window;
        const auto& base = node.base;
        Jet2 gi;
        for (int o = 0; o < out; ++o) {
          const Jet2 go = g->jet(o, p);
          const double a0 = go.val;
          const double a1 = go.dx * t.dx + go.dy * t.dy + go.dxx * t.dxx + go.dyy * t.dyy;
          const double a2 = go.dxx * t.dx * t.dx + go.dyy * t.dy * t.dy;
          const std::size_t at = offsets[l] + static_cast<std::size_t>(o * in + i) * stride;
          const double* edge = model.params.data() + at;
          const double* coeffs = edge + 2 + win.first;
          double* gedge = grad.data() + at;
          double* gcoeffs = gedge + 2 + win.first;
          std::array<double, 4> s{};
          for (int r = 0; r < win.count; ++r) {
            for (int d = 0; d < 4; ++d) s[d] += coeffs[r] * win.ders[d][r];
            gcoeffs[r] += edge[1] * (win.ders[0][r] * a0 + win.ders[1][r] * a1 + win.ders[2][r] * a2);
          }
          gedge[0] += base.f * a0 + base.d1 * a1 + base.d2 * a2;
          gedge[1] += s[0] * a0 + s[1] * a1 + s[2] * a2;
          if (!propagate) continue;
          const double f1 = edge[0] * base.d1 + edge[1] * s[1];
          const double f2 = edge[0] * base.d2 + edge[1] * s[2];
          const double f3 = edge[0] * base.d3 + edge[1] * s[3];
          gi.val += f1 * a0 + f2 * a1 + f3 * a2;
          gi.dx += f1 * go.dx + 2.0 * f2 * go.dxx * t.dx;
          gi.dy += f1 * go.dy + 2.0 * f2 * go.dyy * t.dy;
          gi.dxx += f1 * go.dxx;
          gi.dyy += f1 * go.dyy;
        }
        if (propagate) gin->set(i, p, gi);
      }
    }
    if (propagate) std::swap(g, gin);
  }
}

}  // namespace

std::vector<Jet2> forward_batch(const NetworkModel& model, std::span<const Point> points, BatchTape* tape) {
  BatchTape local;
  BatchTape& t = tape ? *tape : local;
  if (model.backend == Backend::mlp)
    mlp_forward_batch(model, points, t);
  else
    kan_forward_batch(model, points, t);
  return output_jets(t.output);
}

void backward_batch(const NetworkModel& model, BatchTape& tape, std::span<const Jet2> output_adjoints,
                    std::span<double> grad) {
  if (grad.size() != model.params.size()) throw ConfigError("gradient buffer size does not match the model");
  if (tape.inputs.size() + 1 != model.layer_widths.size() ||
      tape.output.cols() != static_cast<Eigen::Index>(output_adjoints.size()))
    throw ConfigError("tape does not match the model or the adjoint batch");
  fill_adjoints(tape.adj, output_adjoints);
  if (model.backend == Backend::mlp)
    mlp_backward_batch(model, tape, grad);
  else
    kan_backward_batch(model, tape, grad);
}

}  // namespace kpinn
