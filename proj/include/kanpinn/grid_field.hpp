#pragma once

#include <cstddef>
#include <vector>

namespace kpinn {

/// Scalar field on an n x n uniform grid over the unit square.
/// Node (i, j) sits at x = i/(n-1), y = j/(n-1); storage is row-major in j.
class GridField {
 public:
  GridField() = default;
  explicit GridField(int n, double fill = 0.0);

  int n() const { return n_; }
  double x(int i) const { return static_cast<double>(i) / (n_ - 1); }
  double y(int j) const { return static_cast<double>(j) / (n_ - 1); }

  double& at(int i, int j) { return values_[static_cast<std::size_t>(j) * n_ + i]; }
  double at(int i, int j) const { return values_[static_cast<std::size_t>(j) * n_ + i]; }

  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

 private:
  int n_ = 0;
  std::vector<double> values_;
};

}  // namespace kpinn
