#pragma once

#include <array>
#include <utility>

namespace kpinn {

/// Second-order forward-mode jet over the two spatial inputs.
///
/// Carries a value together with its gradient and the pure second
/// derivatives; the mixed partial is not tracked, so only the Laplacian
/// (dxx + dyy) can be recovered from the second-order part.
struct Jet2 {
  double val = 0.0;
  double dx = 0.0;
  double dy = 0.0;
  double dxx = 0.0;
  double dyy = 0.0;

  static constexpr Jet2 constant(double v) { return {v, 0.0, 0.0, 0.0, 0.0}; }

  double laplacian() const { return dxx + dyy; }

  friend bool operator==(const Jet2&, const Jet2&) = default;
};

/// Input jets for the coordinates: x carries d/dx = 1, y carries d/dy = 1.
std::pair<Jet2, Jet2> seed_input(double x, double y);

Jet2 operator+(const Jet2& a, const Jet2& b);
Jet2 operator-(const Jet2& a, const Jet2& b);
Jet2 operator-(const Jet2& a);
Jet2 operator*(const Jet2& a, const Jet2& b);
Jet2 operator*(double c, const Jet2& a);
Jet2 operator*(const Jet2& a, double c);
Jet2& operator+=(Jet2& a, const Jet2& b);

enum class Activation { identity, tanh, silu };

/// f and its first three derivatives at a point. The third derivative is
/// only needed by the reverse sweep.
struct ActivationDerivatives {
  double f = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;
};

ActivationDerivatives activation_derivatives(Activation kind, double z);
double activate(Activation kind, double z);

/// Chain rule for a scalar function with known f, f', f'' at a.val.
Jet2 compose(const Jet2& a, double f, double d1, double d2);

Jet2 unary(const Jet2& a, Activation kind);

}  // namespace kpinn
