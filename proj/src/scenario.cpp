#include "forage/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "forage/errors.hpp"

namespace forage {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& text, int line, const std::string& key) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size() || std::isnan(v)) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(line) + ": bad number for " + key);
  }
}

long long parse_int(const std::string& text, int line, const std::string& key) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError("line " + std::to_string(line) + ": bad integer for " + key);
  }
  return v;
}

std::uint64_t parse_u64(const std::string& text, int line, const std::string& key) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError("line " + std::to_string(line) + ": bad integer for " + key);
  }
  return v;
}

std::pair<int, int> parse_cell(const std::string& text, int line, const std::string& key) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    throw ParseError("line " + std::to_string(line) + ": " + key + " needs 'row,col'");
  }
  const int row = static_cast<int>(parse_int(trim(text.substr(0, comma)), line, key));
  const int col = static_cast<int>(parse_int(trim(text.substr(comma + 1)), line, key));
  return {row, col};
}

std::vector<std::pair<int, int>> parse_cell_list(const std::string& text, int line,
                                                 const std::string& key) {
  std::vector<std::pair<int, int>> cells;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    item = trim(item);
    if (item.empty()) continue;
    cells.push_back(parse_cell(item, line, key));
  }
  return cells;
}

void check_range(bool ok, const std::string& key) {
  if (!ok) throw RangeError("value of '" + key + "' is out of range");
}

// Shortest decimal form that parses back to the same double.
std::string fmt(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

ScenarioConfig parse_scenario_text(const std::string& text) {
  ScenarioConfig cfg;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw = raw.substr(0, hash);
    raw = trim(raw);
    if (raw.empty()) continue;
    const auto eq = raw.find('=');
    if (eq == std::string::npos) {
      throw ParseError("line " + std::to_string(line) + ": expected 'key = value'");
    }
    const std::string key = trim(raw.substr(0, eq));
    const std::string value = trim(raw.substr(eq + 1));
    if (key.empty()) throw ParseError("line " + std::to_string(line) + ": empty key");
    if (!seen.insert(key).second) {
      throw ParseError("line " + std::to_string(line) + ": duplicate key '" + key + "'");
    }

    if (key == "rows") {
      cfg.rows = static_cast<int>(parse_int(value, line, key));
    } else if (key == "cols") {
      cfg.cols = static_cast<int>(parse_int(value, line, key));
    } else if (key == "obstacles") {
      cfg.obstacles = parse_cell_list(value, line, key);
    } else if (key == "s_cell") {
      cfg.s_cell = parse_cell(value, line, key);
    } else if (key == "t_cell") {
      cfg.t_cell = parse_cell(value, line, key);
    } else if (key == "rho") {
      cfg.rho = parse_double(value, line, key);
    } else if (key == "lambda") {
      cfg.lambda = parse_double(value, line, key);
    } else if (key == "r") {
      cfg.r = parse_double(value, line, key);
    } else if (key == "epsilon") {
      cfg.epsilon = parse_double(value, line, key);
    } else if (key == "n") {
      cfg.n = parse_int(value, line, key);
    } else if (key == "K") {
      cfg.K = static_cast<int>(parse_int(value, line, key));
    } else if (key == "horizon") {
      cfg.horizon = parse_int(value, line, key);
    } else if (key == "max_t") {
      cfg.max_t = parse_int(value, line, key);
    } else if (key == "tol") {
      cfg.tol = parse_double(value, line, key);
    } else if (key == "seed") {
      cfg.seed = parse_u64(value, line, key);
    } else if (key == "snapshot_stride") {
      cfg.snapshot_stride = parse_int(value, line, key);
    } else if (key == "window") {
      cfg.window = static_cast<int>(parse_int(value, line, key));
    } else if (key == "w0") {
      cfg.w0 = parse_double(value, line, key);
    } else {
      throw ParseError("line " + std::to_string(line) + ": unknown key '" + key + "'");
    }
  }

  if (!seen.count("rows")) throw ParseError("missing required key 'rows'");
  if (!seen.count("cols")) throw ParseError("missing required key 'cols'");

  check_range(cfg.rows >= 2, "rows");
  check_range(cfg.cols >= 2, "cols");
  for (const auto& [row, col] : cfg.obstacles) {
    check_range(row >= 0 && row < cfg.rows && col >= 0 && col < cfg.cols, "obstacles");
  }
  const auto t_cell = cfg.resolved_t_cell();
  check_range(cfg.s_cell.first >= 0 && cfg.s_cell.first < cfg.rows &&
                  cfg.s_cell.second >= 0 && cfg.s_cell.second < cfg.cols,
              "s_cell");
  check_range(t_cell.first >= 0 && t_cell.first < cfg.rows && t_cell.second >= 0 &&
                  t_cell.second < cfg.cols,
              "t_cell");
  check_range(cfg.rho > 0.0 && cfg.rho < 1.0, "rho");
  check_range(cfg.lambda > 0.0 && cfg.lambda < 1.0, "lambda");
  check_range(cfg.epsilon > 0.0 && cfg.epsilon <= 1.0, "epsilon");
  check_range(cfg.r >= 0.0, "r");
  check_range(cfg.n >= 1, "n");
  check_range(cfg.K >= 1, "K");
  check_range(cfg.horizon >= 1, "horizon");
  check_range(cfg.max_t >= 1, "max_t");
  check_range(cfg.tol > 0.0, "tol");
  check_range(cfg.snapshot_stride >= 1, "snapshot_stride");
  check_range(cfg.window >= 1, "window");
  check_range(cfg.w0 >= 0.0, "w0");
  return cfg;
}

ScenarioConfig parse_scenario(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw IoError("cannot open scenario file: " + path);
  std::stringstream buffer;
  buffer << file.rdbuf();
  return parse_scenario_text(buffer.str());
}

std::string emit_scenario(const ScenarioConfig& cfg) {
  std::ostringstream out;
  out << "rows = " << cfg.rows << "\n";
  out << "cols = " << cfg.cols << "\n";
  out << "obstacles =";
  for (std::size_t i = 0; i < cfg.obstacles.size(); ++i) {
    out << (i ? "; " : " ") << cfg.obstacles[i].first << "," << cfg.obstacles[i].second;
  }
  out << "\n";
  out << "s_cell = " << cfg.s_cell.first << "," << cfg.s_cell.second << "\n";
  const auto t_cell = cfg.resolved_t_cell();
  out << "t_cell = " << t_cell.first << "," << t_cell.second << "\n";
  out << "rho = " << fmt(cfg.rho) << "\n";
  out << "lambda = " << fmt(cfg.lambda) << "\n";
  out << "r = " << fmt(cfg.r) << "\n";
  out << "epsilon = " << fmt(cfg.epsilon) << "\n";
  out << "n = " << cfg.n << "\n";
  out << "K = " << cfg.K << "\n";
  out << "horizon = " << cfg.horizon << "\n";
  out << "max_t = " << cfg.max_t << "\n";
  out << "tol = " << fmt(cfg.tol) << "\n";
  out << "seed = " << cfg.seed << "\n";
  out << "snapshot_stride = " << cfg.snapshot_stride << "\n";
  out << "window = " << cfg.window << "\n";
  out << "w0 = " << fmt(cfg.w0) << "\n";
  return out.str();
}

}  // namespace forage
