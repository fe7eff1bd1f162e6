#include <doctest.h>

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "kanpinn/error.hpp"
#include "kanpinn/evaluation.hpp"
#include "kanpinn/oracle.hpp"
#include "test_util.hpp"

using namespace kpinn;

namespace {

GridField random_field(int n, std::uint64_t seed, double lo, double hi) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  GridField f(n);
  for (double& v : f.values()) v = u(rng);
  return f;
}

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::size_t parse_error_line(const std::string& text) {
  std::istringstream in(text);
  try {
    read_csv(in);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("eval_grid") {
  const auto zero = eval_grid(test::zero_model(Backend::kan), 101);
  CHECK(zero.values().size() == 10201);
  for (double v : zero.values()) CHECK(v == 0.0);
  CHECK(zero.x(1) == 0.01);
  CHECK(zero.y(100) == 1.0);
  const auto m = init_default_model(Backend::mlp, 3);
  const auto f = eval_grid(m, 11);
  CHECK(f.at(3, 7) == predict(m, 0.3, 0.7));
  CHECK(eval_grid(m, 11).values() == f.values());
  CHECK_THROWS_AS(eval_grid(m, 1), ConfigError);
}

TEST_CASE("abs_diff statistics") {
  const auto a = random_field(21, 1, -1.0, 1.0);
  const auto b = random_field(21, 2, -1.0, 1.0);
  const auto self = abs_diff(a, a);
  CHECK(self.stats.max_abs == 0.0);
  CHECK(self.stats.mean_abs == 0.0);
  const auto ab = abs_diff(a, b), ba = abs_diff(b, a);
  CHECK(ab.field.values() == ba.field.values());
  CHECK(ab.stats.mean_abs <= ab.stats.max_abs);
  CHECK(ab.stats.max_abs_below_y95 <= ab.stats.max_abs);
  CHECK(ab.field.at(ab.stats.argmax_i, ab.stats.argmax_j) == ab.stats.max_abs);
  CHECK_THROWS_AS(abs_diff(a, GridField(20)), ConfigError);

  // Ties resolve to the smallest (j, i); the band above y = 0.95 is excluded from the gate.
  GridField z(21), t(21);
  t.at(5, 3) = 0.5;
  t.at(2, 4) = 0.5;
  t.at(9, 20) = 0.9;
  t.at(4, 19) = 0.2;  // y = 0.95 is inside the gated region
  auto d = abs_diff(z, t);
  CHECK(d.stats.max_abs == 0.9);
  CHECK(d.stats.argmax_j == 20);
  CHECK(d.stats.max_abs_below_y95 == 0.5);
  t.at(9, 20) = 0.0;
  d = abs_diff(z, t);
  CHECK(d.stats.argmax_i == 5);
  CHECK(d.stats.argmax_j == 3);
}

TEST_CASE("csv layout") {
  std::ostringstream out;
  write_csv(oracle_grid(101, 200), out);
  const auto lines = lines_of(out.str());
  REQUIRE(lines.size() == 10202);
  CHECK(lines[0] == "x,y,u");
  CHECK(lines[1] == "0,0,0");
  CHECK(lines[2] == "0.01,0,0");
  CHECK(lines[10201].rfind("1,1,", 0) == 0);
}

TEST_CASE("csv round trip") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int n = 2 + static_cast<int>(seed % 7) * 5;
    const auto f = random_field(n, seed, -10.0, 10.0);
    std::stringstream io;
    write_csv(f, io);
    const auto back = read_csv(io);
    REQUIRE(back.n() == n);
    for (std::size_t k = 0; k < f.values().size(); ++k) CHECK(std::abs(back.values()[k] - f.values()[k]) <= 1e-8);
  }
}

TEST_CASE("csv parse errors carry line numbers") {
  CHECK(parse_error_line("") == 1);
  CHECK(parse_error_line("a,b,c\n") == 1);
  CHECK(parse_error_line("x,y,u\n0,0,1\n1,0,2\n0,1\n1,1,3\n") == 4);
  CHECK(parse_error_line("x,y,u\n0,0,1\n1,0,zz\n0,1,2\n1,1,3\n") == 3);
  CHECK(parse_error_line("x,y,u\n0,0,1\n1,0,2\n0,1,2,\n1,1,3\n") == 4);
  CHECK(parse_error_line("x,y,u\n0,0,1\n1,0,2\n0,1,nan\n1,1,3\n") == 4);
  CHECK(parse_error_line("x,y,u\n0,0,1\n1,0,2\n0,1,3\n") == 4);           // 3 nodes
  CHECK(parse_error_line("x,y,u\n0,0,1\n0,1,2\n1,0,3\n1,1,4\n") == 3);    // x must vary fastest
  CHECK(parse_error_line("x,y,u\n0,0,1\n1,0,2\n0,1,3\n1,1,4\n") == 0);
  std::istringstream crlf("x,y,u\r\n0,0,1\r\n1,0,2\r\n0,1,3\r\n1,1,4\r\n");
  CHECK(read_csv(crlf).at(1, 1) == 4.0);
}

TEST_CASE("heatmaps") {
  auto render = [](const GridField& f, const HeatmapRange& r) {
    std::ostringstream out;
    write_heatmap(f, out, r);
    return lines_of(out.str());
  };
  const HeatmapRange unit = std::make_pair(0.0, 1.0);
  auto zeros = render(GridField(3, 0.0), unit);
  REQUIRE(zeros.size() == 6);
  CHECK(zeros[0] == "P2");
  CHECK(zeros[1] == "3 3");
  CHECK(zeros[2] == "255");
  CHECK(zeros[3] == "0 0 0");
  CHECK(render(GridField(3, 1.0), unit)[5] == "255 255 255");
  CHECK(render(GridField(2, 7.0), std::nullopt)[3] == "0 0");

  GridField ramp(2);
  ramp.at(0, 0) = -1.0;
  ramp.at(1, 0) = 0.25;
  ramp.at(0, 1) = 0.5;
  ramp.at(1, 1) = 3.0;
  const auto img = render(ramp, unit);
  CHECK(img[3] == "128 255");  // top row is y = 1
  CHECK(img[4] == "0 64");
  CHECK(render(ramp, std::nullopt)[4] == "0 80");

  // Oracle: the row just under the excitation plane is brighter than the bottom.
  const auto oracle = render(oracle_grid(21, 200), unit);
  std::istringstream top(oracle[4]), bottom(oracle[23]);
  for (int i = 0; i < 21; ++i) {
    int t = 0, b = 0;
    top >> t;
    bottom >> b;
    if (i > 0 && i < 20) CHECK(t > b);
  }

  // Monotone mapping.
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-0.5, 1.5);
  GridField line(40);
  for (int i = 0; i < 40; ++i) line.at(i, 0) = u(rng);
  std::ostringstream out;
  write_heatmap(line, out, unit);
  const auto rows = lines_of(out.str());
  std::istringstream last(rows.back());
  std::vector<int> px(40);
  for (int& p : px) last >> p;
  for (int a = 0; a < 40; ++a)
    for (int b = 0; b < 40; ++b)
      if (line.at(a, 0) <= line.at(b, 0)) CHECK(px[a] <= px[b]);
  CHECK_THROWS_AS(render(ramp, std::make_pair(1.0, 1.0)), ConfigError);
}
