#include "kanpinn/objective.hpp"

#include <algorithm>
#include <vector>

#include "kanpinn/error.hpp"

namespace kpinn {

namespace {

double sorted_mean(std::vector<double> terms) {
  std::sort(terms.begin(), terms.end());
  double sum = 0.0;
  for (double t : terms) sum += t;
  return sum / static_cast<double>(terms.size());
}

void check_alpha(double alpha) {
  if (!(alpha > 0.0)) throw ConfigError("alpha must be positive");
}

}  // namespace

double pde_residual(const NetworkModel& model, const Point& point) {
  const auto [jx, jy] = seed_input(point.x, point.y);
  return -forward(model, jx, jy).laplacian();
}

double interior_loss(const NetworkModel& model, std::span<const Point> points) {
  if (points.empty()) throw ConfigError("interior loss needs at least one point");
  std::vector<double> terms;
  terms.reserve(points.size());
  for (const auto& p : points) {
    const double r = pde_residual(model, p);
    terms.push_back(r * r);
  }
  return sorted_mean(std::move(terms));
}

double boundary_loss(const NetworkModel& model, std::span<const BoundaryPoint> points) {
  if (points.empty()) throw ConfigError("boundary loss needs at least one point");
  std::vector<double> terms;
  terms.reserve(points.size());
  for (const auto& b : points) {
    const double e = predict(model, b.x, b.y) - b.target;
    terms.push_back(e * e);
  }
  return sorted_mean(std::move(terms));
}

LossBreakdown total_loss(const NetworkModel& model, const SampleSet& samples, double alpha) {
  check_alpha(alpha);
  LossBreakdown out;
  out.alpha = alpha;
  out.interior = interior_loss(model, samples.interior);
  out.boundary = boundary_loss(model, samples.boundary);
  out.total = alpha * out.interior + out.boundary;
  return out;
}

JetLoss pinn_jet_loss(const SampleSet& samples, double alpha, LossBreakdown* last) {
  check_alpha(alpha);
  if (samples.interior.empty() || samples.boundary.empty())
    throw ConfigError("loss needs interior and boundary points");
  JetLoss loss;
  loss.points = samples.interior;
  std::vector<double> targets;
  for (const auto& b : samples.boundary) {
    loss.points.push_back({b.x, b.y});
    targets.push_back(b.target);
  }
  const std::size_t n_i = samples.interior.size();
  loss.reduce = [n_i, alpha, last, targets = std::move(targets)](std::span<const Jet2> out,
                                                                  std::span<Jet2> adj) {
    const double n_b = static_cast<double>(targets.size());
    double interior = 0.0;
    for (std::size_t p = 0; p < n_i; ++p) {
      const double r = -out[p].laplacian();
      interior += r * r;
      const double g = -2.0 * alpha * r / static_cast<double>(n_i);
      adj[p] = {0.0, 0.0, 0.0, g, g};
    }
    interior /= static_cast<double>(n_i);
    double boundary = 0.0;
    for (std::size_t b = 0; b < targets.size(); ++b) {
      const double e = out[n_i + b].val - targets[b];
      boundary += e * e;
      adj[n_i + b] = {2.0 * e / n_b, 0.0, 0.0, 0.0, 0.0};
    }
    boundary /= n_b;
    const double total = alpha * interior + boundary;
    if (last) *last = {interior, boundary, total, alpha};
    return total;
  };
  return loss;
}

}  // namespace kpinn
