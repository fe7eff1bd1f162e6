#include "kanpinn/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <tuple>
#include <string>
#include <vector>

#include "kanpinn/error.hpp"

namespace kpinn {

GridField eval_grid(const NetworkModel& model, int n) {
  GridField field(n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) field.at(i, j) = predict(model, field.x(i), field.y(j));
  return field;
}

DiffResult abs_diff(const GridField& a, const GridField& b) {
  if (a.n() != b.n())
    throw ConfigError("grid size mismatch: " + std::to_string(a.n()) + " vs " + std::to_string(b.n()));
  DiffResult result{GridField(a.n()), {}};
  auto& s = result.stats;
  double sum = 0.0;
  for (int j = 0; j < a.n(); ++j) {
    for (int i = 0; i < a.n(); ++i) {
      const double d = std::abs(a.at(i, j) - b.at(i, j));
      result.field.at(i, j) = d;
      sum += d;
      if (d > s.max_abs) {
        s.max_abs = d;
        s.argmax_i = i;
        s.argmax_j = j;
      }
      if (a.y(j) <= kGateHeight) s.max_abs_below_y95 = std::max(s.max_abs_below_y95, d);
    }
  }
  s.mean_abs = sum / static_cast<double>(a.values().size());
  return result;
}

void write_csv(const GridField& field, std::ostream& out) {
  out << "x,y,u\n";
  char line[96];
  for (int j = 0; j < field.n(); ++j) {
    for (int i = 0; i < field.n(); ++i) {
      std::snprintf(line, sizeof line, "%.9g,%.9g,%.9g\n", field.x(i), field.y(j), field.at(i, j));
      out << line;
    }
  }
}

namespace {

double parse_number(const std::string& text, std::size_t line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ParseError("not a number: '" + text + "'", line);
  }
  if (used != text.size()) throw ParseError("trailing characters in '" + text + "'", line);
  if (!std::isfinite(v)) throw ParseError("non-finite value", line);
  return v;
}

}  // namespace

GridField read_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ParseError("empty input", 1);
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "x,y,u") throw ParseError("expected header 'x,y,u'", line_no);

  struct Row {
    double x, y, u;
    std::size_t line;
  };
  std::vector<Row> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 3 || line.back() == ',') throw ParseError("expected 3 columns", line_no);
    rows.push_back({parse_number(cells[0], line_no), parse_number(cells[1], line_no),
                    parse_number(cells[2], line_no), line_no});
  }

  const auto count = rows.size();
  const auto n = static_cast<int>(std::llround(std::sqrt(static_cast<double>(count))));
  if (count < 4 || static_cast<std::size_t>(n) * n != count)
    throw ParseError("node count " + std::to_string(count) + " is not a square grid of side >= 2", line_no);

  GridField field(n);
  constexpr double kCoordTol = 1e-7;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const Row& r = rows[static_cast<std::size_t>(j) * n + i];
      if (std::abs(r.x - field.x(i)) > kCoordTol || std::abs(r.y - field.y(j)) > kCoordTol)
        throw ParseError("node out of place for a " + std::to_string(n) + "x" + std::to_string(n) + " grid",
                         r.line);
      field.at(i, j) = r.u;
    }
  }
  return field;
}

void write_heatmap(const GridField& field, std::ostream& out, const HeatmapRange& range) {
  double lo = 0.0;
  double hi = 1.0;
  if (range) {
    std::tie(lo, hi) = *range;
    if (!(lo < hi)) throw ConfigError("heatmap range needs lo < hi");
  } else {
    const auto [mn, mx] = std::minmax_element(field.values().begin(), field.values().end());
    lo = *mn;
    hi = *mx > *mn ? *mx : *mn + 1.0;
  }
  const int n = field.n();
  out << "P2\n" << n << ' ' << n << "\n255\n";
  for (int j = n - 1; j >= 0; --j) {
    for (int i = 0; i < n; ++i) {
      const double t = std::clamp((field.at(i, j) - lo) / (hi - lo), 0.0, 1.0);
      if (i) out << ' ';
      out << std::lround(255.0 * t);
    }
    out << '\n';
  }
}

}  // namespace kpinn
