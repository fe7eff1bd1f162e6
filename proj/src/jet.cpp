#include "kanpinn/jet.hpp"

#include <cmath>

namespace kpinn {

std::pair<Jet2, Jet2> seed_input(double x, double y) {
  return {Jet2{x, 1.0, 0.0, 0.0, 0.0}, Jet2{y, 0.0, 1.0, 0.0, 0.0}};
}

Jet2 operator+(const Jet2& a, const Jet2& b) {
  return {a.val + b.val, a.dx + b.dx, a.dy + b.dy, a.dxx + b.dxx, a.dyy + b.dyy};
}

Jet2 operator-(const Jet2& a, const Jet2& b) {
  return {a.val - b.val, a.dx - b.dx, a.dy - b.dy, a.dxx - b.dxx, a.dyy - b.dyy};
}

Jet2 operator-(const Jet2& a) { return {-a.val, -a.dx, -a.dy, -a.dxx, -a.dyy}; }

Jet2 operator*(const Jet2& a, const Jet2& b) {
  return {a.val * b.val,
          a.dx * b.val + a.val * b.dx,
          a.dy * b.val + a.val * b.dy,
          a.dxx * b.val + 2.0 * a.dx * b.dx + a.val * b.dxx,
          a.dyy * b.val + 2.0 * a.dy * b.dy + a.val * b.dyy};
}

Jet2 operator*(double c, const Jet2& a) { return {c * a.val, c * a.dx, c * a.dy, c * a.dxx, c * a.dyy}; }

Jet2 operator*(const Jet2& a, double c) { return c * a; }

Jet2& operator+=(Jet2& a, const Jet2& b) {
  a.val += b.val;
  a.dx += b.dx;
  a.dy += b.dy;
  a.dxx += b.dxx;
  a.dyy += b.dyy;
  return a;
}

ActivationDerivatives activation_derivatives(Activation kind, double z) {
  switch (kind) {
    case Activation::identity:
      return {z, 1.0, 0.0, 0.0};
    case Activation::tanh: {
      const double t = std::tanh(z);
      const double s1 = 1.0 - t * t;
      const double s2 = -2.0 * t * s1;
      return {t, s1, s2, -2.0 * s1 * s1 + 4.0 * t * t * s1};
    }
    case Activation::silu: {
      const double s = 1.0 / (1.0 + std::exp(-z));
      const double q = s * (1.0 - s);  // sigmoid'
      const double u = 1.0 - 2.0 * s;
      const double r = 2.0 + z * u;
      return {z * s, s + z * q, q * r, q * (u * r + u - 2.0 * z * q)};
    }
  }
  return {};
}

double activate(Activation kind, double z) {
  switch (kind) {
    case Activation::identity:
      return z;
    case Activation::tanh:
      return std::tanh(z);
    case Activation::silu:
      return z / (1.0 + std::exp(-z));
  }
  return z;
}

Jet2 compose(const Jet2& a, double f, double d1, double d2) {
  return {f,
          d1 * a.dx,
          d1 * a.dy,
          d2 * a.dx * a.dx + d1 * a.dxx,
          d2 * a.dy * a.dy + d1 * a.dyy};
}

Jet2 unary(const Jet2& a, Activation kind) {
  if (kind == Activation::identity) return a;
  const auto d = activation_derivatives(kind, a.val);
  return compose(a, d.f, d.d1, d.d2);
}

}  // namespace kpinn
