#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <utility>

#include "kanpinn/grid_field.hpp"
#include "kanpinn/network.hpp"

namespace kpinn {

/// Nodes with y at or below this height enter max_abs_below_y95.
inline constexpr double kGateHeight = 0.95;

struct DiffStats {
  double max_abs = 0.0;
  double mean_abs = 0.0;
  double max_abs_below_y95 = 0.0;
  int argmax_i = 0;  // first node (row-major) attaining max_abs
  int argmax_j = 0;
};

struct DiffResult {
  GridField field;
  DiffStats stats;
};

/// Model prediction at every node.
GridField eval_grid(const NetworkModel& model, int n);

/// Nodewise |a - b| with summary statistics. Throws ConfigError on a size mismatch.
DiffResult abs_diff(const GridField& a, const GridField& b);

/// `x,y,u` CSV, y outer and x inner, 9 significant digits.
void write_csv(const GridField& field, std::ostream& out);

/// Inverse of write_csv. Throws ParseError (with the line number) on a
/// malformed row, a node count that is not a square, or nodes out of order.
GridField read_csv(std::istream& in);

/// Fixed [lo, hi] intensity window; std::nullopt selects the field's own range.
using HeatmapRange = std::optional<std::pair<double, double>>;

/// Plain PGM (P2), maxval 255, one image row per line, top row = y = 1.
void write_heatmap(const GridField& field, std::ostream& out, const HeatmapRange& range);

}  // namespace kpinn
