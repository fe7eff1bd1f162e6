#pragma once

#include <array>
#include <span>
#include <vector>

namespace kpinn {

/// B-spline basis of order k over a knot vector.
///
/// The default construction lays G uniform intervals over [lo, hi] and pads
/// k knots of the same spacing on each side, giving G + 2k + 1 knots and
/// G + k basis functions. Outside [lo, hi] the basis is continued with the
/// polynomial pieces of the first and last interval, so partition of unity
/// holds on the whole real line.
///
/// On construction each interval's k+1 active functions are converted to
/// polynomials in the local coordinate t - knots[span] (via the triangular
/// Cox-de Boor table), so evaluation is a handful of Horner sums.
class SplineBasis {
 public:
  static constexpr int kMaxOrder = 7;
  static constexpr int kMaxDerivative = 3;

  /// The k+1 basis functions that are non-zero around t, with derivatives.
  /// ders[d][r] is the d-th derivative of basis function first + r; only
  /// rows up to the requested derivative order and columns below `count`
  /// are written.
  struct Window {
    int first = 0;
    int count = 0;
    std::array<std::array<double, kMaxOrder + 1>, kMaxDerivative + 1> ders;
  };

  SplineBasis(int grid_size, int order, double lo, double hi);
  SplineBasis(std::vector<double> knots, int order);

  int order() const { return order_; }
  /// Number of basis functions (G + k).
  int size() const { return static_cast<int>(knots_.size()) - order_ - 1; }
  std::span<const double> knots() const { return knots_; }
  double lo() const { return knots_[order_]; }
  double hi() const { return knots_[knots_.size() - 1 - order_]; }

  /// All basis values at t, zeros outside the active window.
  std::vector<double> evaluate(double t) const;

  /// Active window at t with derivatives up to `derivatives` (at most 3).
  Window window(double t, int derivatives) const;

 private:
  void build_pieces();
  int span_index(double t) const;

  std::vector<double> knots_;
  int order_;
  // pieces_[((s * 4 + d) * (k+1) + r) * (k+1) + m]: coefficient of u^m in
  // the d-th derivative of active function r on interval s (intervals
  // counted from lo).
  std::vector<double> pieces_;
};

}  // namespace kpinn
