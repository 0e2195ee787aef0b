#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "forage/csv.hpp"
#include "forage/errors.hpp"
#include "forage/graph.hpp"
#include "forage/scenario.hpp"
#include "forage/svg.hpp"

using namespace forage;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
  const fs::path dir = fs::temp_directory_path() / "forage_io_tests";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int count_occurrences(const std::string& hay, const std::string& needle) {
  int count = 0;
  for (std::size_t pos = hay.find(needle); pos != std::string::npos;
       pos = hay.find(needle, pos + needle.size())) {
    ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("a rows/cols-only scenario fills in every default") {
  const ScenarioConfig cfg = parse_scenario_text("rows = 3\ncols = 3\n");
  CHECK(cfg.rows == 3);
  CHECK(cfg.cols == 3);
  CHECK(cfg.obstacles.empty());
  CHECK(cfg.s_cell == std::pair<int, int>{0, 0});
  CHECK(cfg.resolved_t_cell() == std::pair<int, int>{2, 2});
  CHECK(cfg.rho == 0.005);
  CHECK(cfg.lambda == 0.9);
  CHECK(cfg.r == 5.0);
  CHECK(cfg.epsilon == 0.5);
  CHECK(cfg.n == 600);
  CHECK(cfg.K == 100);
  CHECK(cfg.horizon == 5000);
  CHECK(cfg.max_t == 100000);
  CHECK(cfg.tol == 1e-10);
  CHECK(cfg.seed == 1);
  CHECK(cfg.snapshot_stride == 50);
  CHECK(cfg.window == 1);
  CHECK(cfg.w0 == 0.0);
}

TEST_CASE("parser accepts comments, blanks and explicit keys") {
  const std::string text =
      "# full scenario\n"
      "rows = 4\n"
      "cols = 5\n"
      "\n"
      "obstacles = 1,2; 3,4\n"
      "s_cell = 0,1\n"
      "t_cell = 3,0\n"
      "rho = 0.01\n"
      "lambda = 0.85\n"
      "r = 2.5\n"
      "epsilon = 1\n"  // closed boundary is legal
      "n = 50\n"
      "K = 7\n"
      "horizon = 123\n"
      "max_t = 4567\n"
      "tol = 1e-8\n"
      "seed = 99\n"
      "snapshot_stride = 10\n"
      "window = 3\n"
      "w0 = 0.5\n";
  const ScenarioConfig cfg = parse_scenario_text(text);
  CHECK(cfg.obstacles == std::vector<std::pair<int, int>>{{1, 2}, {3, 4}});
  CHECK(cfg.s_cell == std::pair<int, int>{0, 1});
  CHECK(cfg.t_cell == std::pair<int, int>{3, 0});
  CHECK(cfg.resolved_t_cell() == std::pair<int, int>{3, 0});
  CHECK(cfg.epsilon == 1.0);
  CHECK(cfg.window == 3);
  CHECK(cfg.w0 == 0.5);
  CHECK(cfg.seed == 99);
}

TEST_CASE("parser rejects malformed or out-of-range input") {
  CHECK_THROWS_AS(parse_scenario_text("rows = 3\n"), ParseError);          // cols missing
  CHECK_THROWS_AS(parse_scenario_text("cols = 3\n"), ParseError);          // rows missing
  CHECK_THROWS_AS(parse_scenario_text("rows = 3\ncols = 3\nspeed = 1\n"), ParseError);
  CHECK_THROWS_AS(parse_scenario_text("rows = 3\ncols = 3\nrows = 4\n"), ParseError);
  CHECK_THROWS_AS(parse_scenario_text("rows = 3\ncols = 3\nrho\n"), ParseError);
  CHECK_THROWS_AS(parse_scenario_text("rows = 3\ncols = 3\nrho = abc\n"), ParseError);

  CHECK_THROWS_AS(parse_scenario_text("rows = 1\ncols = 3\n"), RangeError);
  CHECK_THROWS_AS(parse_scenario_text("rows = 3\ncols = 3\nrho = 1.5\n"), RangeError);
  CHECK_THROWS_AS(parse_scenario_text("rows = 3\ncols = 3\nrho = 0\n"), RangeError);
  CHECK_THROWS_AS(parse_scenario_text("rows = 3\ncols = 3\nlambda = 1\n"), RangeError);
  CHECK_THROWS_AS(parse_scenario_text("rows = 3\ncols = 3\nepsilon = 0\n"), RangeError);
  CHECK_THROWS_AS(parse_scenario_text("rows = 3\ncols = 3\nepsilon = 1.1\n"), RangeError);
  CHECK_THROWS_AS(parse_scenario_text("rows = 3\ncols = 3\nr = -1\n"), RangeError);
  CHECK_THROWS_AS(parse_scenario_text("rows = 3\ncols = 3\nn = 0\n"), RangeError);
  CHECK_THROWS_AS(parse_scenario_text("rows = 3\ncols = 3\nK = 0\n"), RangeError);
  CHECK_THROWS_AS(parse_scenario_text("rows = 3\ncols = 3\ntol = 0\n"), RangeError);
  CHECK_THROWS_AS(parse_scenario_text("rows = 3\ncols = 3\nobstacles = 5,0\n"), RangeError);
  CHECK_THROWS_AS(parse_scenario_text("rows = 3\ncols = 3\ns_cell = 0,3\n"), RangeError);

  // Error messages carry the offending location or key.
  try {
    parse_scenario_text("rows = 3\ncols = 3\nspeed = 1\n");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  try {
    parse_scenario_text("rows = 3\ncols = 3\nrho = 1.5\n");
  } catch (const RangeError& e) {
    CHECK(std::string(e.what()).find("rho") != std::string::npos);
  }
}

TEST_CASE("emit_scenario round-trips every field") {
  ScenarioConfig cfg;
  cfg.rows = 6;
  cfg.cols = 4;
  cfg.obstacles = {{2, 2}, {5, 1}};
  cfg.s_cell = {0, 3};
  cfg.t_cell = {5, 0};
  cfg.rho = 0.0125;
  cfg.lambda = 0.875;
  cfg.r = 7.25;
  cfg.epsilon = 0.3;
  cfg.n = 1234;
  cfg.K = 17;
  cfg.horizon = 999;
  cfg.max_t = 123456;
  cfg.tol = 2.5e-11;
  cfg.seed = 987654321;
  cfg.snapshot_stride = 25;
  cfg.window = 9;
  cfg.w0 = 1.75;

  const ScenarioConfig back = parse_scenario_text(emit_scenario(cfg));
  CHECK(back.rows == cfg.rows);
  CHECK(back.cols == cfg.cols);
  CHECK(back.obstacles == cfg.obstacles);
  CHECK(back.s_cell == cfg.s_cell);
  CHECK(back.t_cell == cfg.t_cell);
  CHECK(back.rho == cfg.rho);
  CHECK(back.lambda == cfg.lambda);
  CHECK(back.r == cfg.r);
  CHECK(back.epsilon == cfg.epsilon);
  CHECK(back.n == cfg.n);
  CHECK(back.K == cfg.K);
  CHECK(back.horizon == cfg.horizon);
  CHECK(back.max_t == cfg.max_t);
  CHECK(back.tol == cfg.tol);
  CHECK(back.seed == cfg.seed);
  CHECK(back.snapshot_stride == cfg.snapshot_stride);
  CHECK(back.window == cfg.window);
  CHECK(back.w0 == cfg.w0);
}

TEST_CASE("parse_scenario distinguishes missing files from bad content") {
  CHECK_THROWS_AS(parse_scenario("/nonexistent/dir/scenario.cfg"), IoError);
  const fs::path path = temp_dir() / "bad.cfg";
  std::ofstream(path) << "rows = 3\ncols = 3\nwhat = 1\n";
  CHECK_THROWS_AS(parse_scenario(path.string()), ParseError);
}

TEST_CASE("timeseries CSV is sorted, LF-only and round-trips") {
  const fs::path path = temp_dir() / "series.csv";
  std::vector<TimeseriesRecord> records = {
      {50, "beta", 1.5},
      {0, "beta", 2.0},
      {50, "alpha", -0.25},
      {0, "alpha", 1.0 / 3.0},
  };
  write_timeseries_csv(records, path.string());

  const std::string text = slurp(path);
  CHECK(text.find('\r') == std::string::npos);
  std::istringstream lines(text);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "t,metric,value");
  std::getline(lines, line);
  CHECK(line == "0,alpha,0.333333333333");
  std::getline(lines, line);
  CHECK(line == "0,beta,2");
  std::getline(lines, line);
  CHECK(line == "50,alpha,-0.25");
  std::getline(lines, line);
  CHECK(line == "50,beta,1.5");
  CHECK_FALSE(std::getline(lines, line));

  const std::vector<TimeseriesRecord> back = read_timeseries_csv(path.string());
  REQUIRE(back.size() == 4);
  CHECK(back[0].t == 0);
  CHECK(back[0].metric == "alpha");
  CHECK(back[0].value == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(back[3].metric == "beta");
  CHECK(back[3].value == 1.5);
}

TEST_CASE("empty and single-record CSV edge cases") {
  const fs::path empty_path = temp_dir() / "empty.csv";
  write_timeseries_csv({}, empty_path.string());
  CHECK(slurp(empty_path) == "t,metric,value\n");
  CHECK(read_timeseries_csv(empty_path.string()).empty());

  const fs::path one_path = temp_dir() / "one.csv";
  write_timeseries_csv({{7, "gap", 0.125}}, one_path.string());
  CHECK(slurp(one_path) == "t,metric,value\n7,gap,0.125\n");

  const fs::path indexed_path = temp_dir() / "indexed.csv";
  write_indexed_csv({1.0, 0.5, 0.0}, indexed_path.string());
  CHECK(slurp(indexed_path) == "index,value\n0,1\n1,0.5\n2,0\n");

  const fs::path bad_path = temp_dir() / "bad.csv";
  std::ofstream(bad_path, std::ios::binary) << "wrong,header,here\n";
  CHECK_THROWS_AS(read_timeseries_csv(bad_path.string()), ParseError);
  CHECK_THROWS_AS(read_timeseries_csv("/nonexistent/file.csv"), IoError);

  CHECK_THROWS_AS(write_timeseries_csv({}, "/nonexistent/dir/out.csv"), IoError);
}

TEST_CASE("format_value keeps 12 significant digits") {
  CHECK(format_value(0.0) == "0");
  CHECK(format_value(1.0) == "1");
  CHECK(format_value(-2.5) == "-2.5");
  CHECK(format_value(1.0 / 3.0) == "0.333333333333");
  CHECK(format_value(123456789012345.0) == "1.23456789012e+14");
}

TEST_CASE("heatmap SVG renders vertices, markers and goals") {
  const Graph g = build_triangular_lattice(3, 3);
  const fs::path path = temp_dir() / "map.svg";

  std::vector<double> values(g.V, 0.0);
  HeatmapMarkers markers;
  markers.s_vertex = 0;
  markers.t_vertex = 8;
  write_heatmap_svg(g, values, markers, path.string());
  const std::string flat = slurp(path);
  CHECK(flat.find("<svg") != std::string::npos);
  CHECK(flat.find("</svg>") == flat.size() - std::string("</svg>\n").size());
  // All-zero input sits at the centre of the diverging scale on every vertex.
  CHECK(count_occurrences(flat, "#f7f7f7") == g.V);
  CHECK(count_occurrences(flat, "<polygon") == 2);  // the two goal triangles

  values[0] = 1.0;
  values[8] = -1.0;
  markers.occupancy.assign(g.V, 0.0);
  markers.occupancy[4] = 0.5;
  write_heatmap_svg(g, values, markers, path.string());
  const std::string colored = slurp(path);
  CHECK(count_occurrences(colored, "#f7f7f7") == g.V - 2);
  CHECK(colored.find("#b2182b") != std::string::npos);  // hot end
  CHECK(colored.find("#2166ac") != std::string::npos);  // cold end

  Graph bare = g;
  bare.coords.clear();
  CHECK_THROWS_AS(write_heatmap_svg(bare, values, markers, path.string()), MissingCoords);

  CHECK_THROWS_AS(write_heatmap_svg(g, std::vector<double>(g.V - 1, 0.0), markers, path.string()),
                  DimensionMismatch);
  HeatmapMarkers bad = markers;
  bad.occupancy.assign(g.V + 1, 0.0);
  CHECK_THROWS_AS(write_heatmap_svg(g, values, bad, path.string()), DimensionMismatch);

  CHECK_THROWS_AS(write_heatmap_svg(g, values, markers, "/nonexistent/dir/map.svg"), IoError);
}
