#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "forage/params.hpp"

namespace forage {

/// Flat run configuration. rows/cols are required in scenario files; every
/// other key falls back to the defaults below.
struct ScenarioConfig {
  int rows = 0;
  int cols = 0;
  std::vector<std::pair<int, int>> obstacles;
  std::pair<int, int> s_cell{0, 0};
  std::pair<int, int> t_cell{-1, -1};  // (-1,-1) means (rows-1, cols-1)
  double rho = 0.005;
  double lambda = 0.9;
  double r = 5.0;
  double epsilon = 0.5;
  long long n = 600;
  int K = 100;
  long long horizon = 5000;
  long long max_t = 100000;
  double tol = 1e-10;
  std::uint64_t seed = 1;
  long long snapshot_stride = 50;
  int window = 1;
  double w0 = 0.0;

  std::pair<int, int> resolved_t_cell() const {
    return t_cell.first < 0 ? std::pair<int, int>{rows - 1, cols - 1} : t_cell;
  }
  DynamicsConfig dynamics() const {
    return DynamicsConfig{rho, lambda, r, epsilon, w0, window};
  }
};

/// Strict parse of `key = value` lines ('#' comments, blank lines allowed).
/// Unknown keys raise ParseError with the line number; out-of-range values
/// raise RangeError naming the key; a missing file raises IoError.
ScenarioConfig parse_scenario(const std::string& path);

/// Same parse from memory, for tests and round-trips.
ScenarioConfig parse_scenario_text(const std::string& text);

/// Emit a scenario in the exact format parse_scenario accepts.
std::string emit_scenario(const ScenarioConfig& cfg);

}  // namespace forage
