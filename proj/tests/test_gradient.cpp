#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "kanpinn/error.hpp"
#include "kanpinn/gradient.hpp"
#include "kanpinn/objective.hpp"
#include "kanpinn/sampling.hpp"
#include "test_util.hpp"

using namespace kpinn;

namespace {

// Small batch with all loss pieces active.
SampleSet small_samples() { return make_samples(16, 3, 11); }

void check_fd(const NetworkModel& base, std::uint64_t seed) {
  const auto samples = small_samples();
  const JetLoss loss = pinn_jet_loss(samples, 1.0);
  const auto grad = parameter_gradient(base, loss);
  REQUIRE(grad.size() == base.params.size());
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, base.params.size() - 1);
  const double h = 1e-6;
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t k = pick(rng);
    auto plus = base, minus = base;
    plus.params[k] += h;
    minus.params[k] -= h;
    const double fd = (loss_value(plus, loss) - loss_value(minus, loss)) / (2 * h);
    INFO("param " << k << " analytic " << grad[k] << " fd " << fd);
    CHECK(test::rel_err(grad[k], fd, 1e-8) <= 1e-5);
  }
}

}  // namespace

TEST_CASE("parameter gradient matches central differences") {
  SUBCASE("small MLP [2,3,1]") { check_fd(init_model(Backend::mlp, {2, 3, 1}, std::nullopt, 4), 1); }
  SUBCASE("MLP [2,32,32,1]") { check_fd(init_default_model(Backend::mlp, 42), 2); }
  SUBCASE("KAN [2,5,5,1]") { check_fd(init_default_model(Backend::kan, 42), 3); }
  SUBCASE("deeper KAN with other spline order") {
    check_fd(init_model(Backend::kan, {2, 3, 4, 2, 1}, KanHyper{4, 2, -1.0, 1.0}, 5), 4);
  }
}

TEST_CASE("gradient of a loss on every jet component") {
  // A reduce that touches val, dx, dy, dxx and dyy nonlinearly.
  JetLoss loss;
  loss.points = test::random_points(5, 31);
  loss.reduce = [](std::span<const Jet2> out, std::span<Jet2> adj) {
    double total = 0.0;
    for (std::size_t k = 0; k < out.size(); ++k) {
      const Jet2& u = out[k];
      total += u.val * u.val + 0.5 * u.dx * u.dx + u.dy * u.dxx + std::sin(u.dyy);
      adj[k] = Jet2{2 * u.val, u.dx, u.dxx, u.dy, std::cos(u.dyy)};
    }
    return total;
  };
  for (Backend b : {Backend::mlp, Backend::kan}) {
    const auto m = init_default_model(b, 8);
    const auto grad = parameter_gradient(m, loss);
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<std::size_t> pick(0, m.params.size() - 1);
    for (int trial = 0; trial < 10; ++trial) {
      const std::size_t k = pick(rng);
      auto plus = m, minus = m;
      plus.params[k] += 1e-6;
      minus.params[k] -= 1e-6;
      const double fd = (loss_value(plus, loss) - loss_value(minus, loss)) / 2e-6;
      CHECK(test::rel_err(grad[k], fd, 1e-8) <= 1e-5);
    }
  }
}

TEST_CASE("zero model with zero targets has zero gradient") {
  SampleSet samples = small_samples();
  for (auto& b : samples.boundary) b.target = 0.0;
  for (Backend b : {Backend::mlp, Backend::kan}) {
    const auto vg = value_and_gradient(test::zero_model(b), pinn_jet_loss(samples, 1.0));
    CHECK(vg.value == 0.0);
    for (double g : vg.gradient) CHECK(g == 0.0);
  }
}

TEST_CASE("doubling the loss closure doubles the gradient exactly") {
  const auto samples = small_samples();
  const JetLoss loss = pinn_jet_loss(samples, 1.0);
  JetLoss doubled = loss;
  doubled.reduce = [inner = loss.reduce](std::span<const Jet2> out, std::span<Jet2> adj) {
    const double v = inner(out, adj);
    for (auto& a : adj) a = 2.0 * a;
    return 2.0 * v;
  };
  for (Backend b : {Backend::mlp, Backend::kan}) {
    const auto m = init_default_model(b, 13);
    const auto g1 = parameter_gradient(m, loss);
    const auto g2 = parameter_gradient(m, doubled);
    for (std::size_t k = 0; k < g1.size(); ++k) CHECK(g2[k] == 2.0 * g1[k]);
  }
}

TEST_CASE("non-finite loss signals divergence") {
  JetLoss loss;
  loss.points = test::random_points(3, 1);
  loss.reduce = [](std::span<const Jet2>, std::span<Jet2> adj) {
    for (auto& a : adj) a = Jet2{};
    return std::numeric_limits<double>::quiet_NaN();
  };
  const auto m = init_default_model(Backend::mlp, 1);
  CHECK_THROWS_AS(parameter_gradient(m, loss), DivergenceError);
  CHECK_THROWS_AS(loss_value(m, loss), DivergenceError);
}

TEST_CASE("jet loss value equals total_loss and the workspace is reusable") {
  const auto samples = make_samples(40, 5, 3);
  LossBreakdown last;
  const JetLoss loss = pinn_jet_loss(samples, 0.7, &last);
  BatchTape tape;
  for (Backend b : {Backend::mlp, Backend::kan}) {
    const auto m = init_default_model(b, 2);
    const auto ref = total_loss(m, samples, 0.7);
    const auto vg = value_and_gradient(m, loss, tape);
    CHECK(vg.value == doctest::Approx(ref.total).epsilon(1e-12));
    CHECK(last.interior == doctest::Approx(ref.interior).epsilon(1e-12));
    CHECK(last.boundary == doctest::Approx(ref.boundary).epsilon(1e-12));
    CHECK(value_and_gradient(m, loss, tape).gradient == vg.gradient);
    CHECK(value_and_gradient(m, loss).gradient == vg.gradient);
  }
}
