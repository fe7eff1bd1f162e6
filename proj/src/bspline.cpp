#include "kanpinn/bspline.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kanpinn/error.hpp"

namespace kpinn {

namespace {

constexpr int kTable = SplineBasis::kMaxOrder + 1;
using Table = std::array<std::array<double, kTable>, kTable>;

void check_order(int order) {
  if (order < 1 || order > SplineBasis::kMaxOrder)
    throw ConfigError("spline order must be in [1, " + std::to_string(SplineBasis::kMaxOrder) + "]");
}

/// ders[d][r] for d = 0..n of the p+1 functions active on interval `span`,
/// evaluated at t (triangular Cox-de Boor table with derivative recurrence).
Table basis_derivatives(std::span<const double> U, int p, int span, double t, int n) {
  Table ndu{};
  std::array<double, kTable> left{};
  std::array<double, kTable> right{};
  ndu[0][0] = 1.0;
  for (int j = 1; j <= p; ++j) {
    left[j] = t - U[span + 1 - j];
    right[j] = U[span + j] - t;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      ndu[j][r] = right[r + 1] + left[j - r];  // knot differences
      const double temp = ndu[r][j - 1] / ndu[j][r];
      ndu[r][j] = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    ndu[j][j] = saved;
  }

  Table ders{};
  for (int j = 0; j <= p; ++j) ders[0][j] = ndu[j][p];

  std::array<std::array<double, kTable>, 2> a{};
  for (int r = 0; r <= p; ++r) {
    int s1 = 0;
    int s2 = 1;
    a[0][0] = 1.0;
    for (int k = 1; k <= n; ++k) {
      double d = 0.0;
      const int rk = r - k;
      const int pk = p - k;
      if (r >= k) {
        a[s2][0] = a[s1][0] / ndu[pk + 1][rk];
        d = a[s2][0] * ndu[rk][pk];
      }
      const int j1 = rk >= -1 ? 1 : -rk;
      const int j2 = (r - 1 <= pk) ? k - 1 : p - r;
      for (int j = j1; j <= j2; ++j) {
        a[s2][j] = (a[s1][j] - a[s1][j - 1]) / ndu[pk + 1][rk + j];
        d += a[s2][j] * ndu[rk + j][pk];
      }
      if (r <= pk) {
        a[s2][k] = -a[s1][k - 1] / ndu[pk + 1][r];
        d += a[s2][k] * ndu[r][pk];
      }
      ders[k][r] = d;
      std::swap(s1, s2);
    }
  }
  double factor = p;
  for (int k = 1; k <= n; ++k) {
    for (int j = 0; j <= p; ++j) ders[k][j] *= factor;
    factor *= p - k;
  }
  return ders;
}

}  // namespace

SplineBasis::SplineBasis(int grid_size, int order, double lo, double hi) : order_(order) {
  check_order(order);
  if (grid_size < 1) throw ConfigError("spline grid size must be positive");
  if (!(lo < hi)) throw ConfigError("spline grid range must satisfy lo < hi");
  const double h = (hi - lo) / grid_size;
  knots_.resize(static_cast<std::size_t>(grid_size + 2 * order + 1));
  for (std::size_t i = 0; i < knots_.size(); ++i)
    knots_[i] = lo + (static_cast<double>(i) - order) * h;
  knots_[grid_size + order] = hi;
  build_pieces();
}

SplineBasis::SplineBasis(std::vector<double> knots, int order) : knots_(std::move(knots)), order_(order) {
  check_order(order);
  if (knots_.size() < static_cast<std::size_t>(2 * order + 2))
    throw ConfigError("knot vector too short for the spline order");
  for (std::size_t i = 1; i < knots_.size(); ++i)
    if (!(knots_[i] > knots_[i - 1])) throw ConfigError("knots must be strictly increasing");
  build_pieces();
}

void SplineBasis::build_pieces() {
  const int p = order_;
  const int k1 = p + 1;
  const int spans = size() - p;
  pieces_.assign(static_cast<std::size_t>(spans) * (kMaxDerivative + 1) * k1 * k1, 0.0);
  for (int s = 0; s < spans; ++s) {
    const int span = s + p;
    // Taylor coefficients at the left end of the interval.
    const Table taylor = basis_derivatives(knots_, p, span, knots_[span], p);
    for (int d = 0; d <= kMaxDerivative; ++d) {
      for (int r = 0; r <= p; ++r) {
        double* c = &pieces_[((static_cast<std::size_t>(s) * (kMaxDerivative + 1) + d) * k1 + r) * k1];
        // d-th derivative of sum_m D_m/m! u^m is sum_m D_{m+d}/m! u^m.
        double factorial = 1.0;
        for (int m = 0; m + d <= p; ++m) {
          if (m > 0) factorial *= m;
          c[m] = taylor[m + d][r] / factorial;
        }
      }
    }
  }
}

int SplineBasis::span_index(double t) const {
  // Clamped to the original grid so that points outside [lo, hi] use the
  // boundary polynomial pieces.
  const int first = order_;
  const int last = static_cast<int>(knots_.size()) - order_ - 2;
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), t);
  const int i = static_cast<int>(it - knots_.begin()) - 1;
  return std::clamp(i, first, last);
}

namespace {

template <int P>
void horner_window(const double* piece, double u, int n, SplineBasis::Window& w) {
  constexpr int k1 = P + 1;
  for (int d = 0; d <= n; ++d) {
    const double* c = piece + d * k1 * k1;
    for (int r = 0; r < k1; ++r, c += k1) {
      double acc = 0.0;
      for (int m = P - d; m >= 0; --m) acc = acc * u + c[m];
      w.ders[d][r] = acc;
    }
  }
}

}  // namespace

SplineBasis::Window SplineBasis::window(double t, int derivatives) const {
  const int p = order_;
  const int k1 = p + 1;
  const int n = std::clamp(derivatives, 0, kMaxDerivative);
  const int span = span_index(t);
  const double u = t - knots_[span];
  const double* piece = pieces_.data() + static_cast<std::size_t>(span - p) * (kMaxDerivative + 1) * k1 * k1;

  Window w;
  w.first = span - p;
  w.count = k1;
  switch (p) {
    case 1: horner_window<1>(piece, u, n, w); break;
    case 2: horner_window<2>(piece, u, n, w); break;
    case 3: horner_window<3>(piece, u, n, w); break;
    case 4: horner_window<4>(piece, u, n, w); break;
    case 5: horner_window<5>(piece, u, n, w); break;
    case 6: horner_window<6>(piece, u, n, w); break;
    default: horner_window<7>(piece, u, n, w); break;
  }
  return w;
}

std::vector<double> SplineBasis::evaluate(double t) const {
  std::vector<double> out(static_cast<std::size_t>(size()), 0.0);
  const Window w = window(t, 0);
  for (int r = 0; r < w.count; ++r) out[w.first + r] = w.ders[0][r];
  return out;
}

}  // namespace kpinn
