#include "forage/csv.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "forage/errors.hpp"

namespace forage {

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_timeseries_csv(std::vector<TimeseriesRecord> records, const std::string& path) {
  std::stable_sort(records.begin(), records.end(),
                   [](const TimeseriesRecord& a, const TimeseriesRecord& b) {
                     if (a.t != b.t) return a.t < b.t;
                     return a.metric < b.metric;
                   });
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << "t,metric,value\n";
  for (const auto& rec : records) {
    out << rec.t << ',' << rec.metric << ',' << format_value(rec.value) << '\n';
  }
  if (!out) throw IoError("failed while writing " + path);
}

void write_indexed_csv(const std::vector<double>& values, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << "index,value\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    out << i << ',' << format_value(values[i]) << '\n';
  }
  if (!out) throw IoError("failed while writing " + path);
}

std::vector<TimeseriesRecord> read_timeseries_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty csv: " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "t,metric,value") throw ParseError("bad csv header in " + path);
  std::vector<TimeseriesRecord> records;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 3 fields in " + path);
    }
    TimeseriesRecord rec;
    try {
      rec.t = std::stoll(line.substr(0, c1));
      rec.metric = line.substr(c1 + 1, c2 - c1 - 1);
      rec.value = std::stod(line.substr(c2 + 1));
    } catch (const std::exception&) {
      throw ParseError("line " + std::to_string(line_no) + ": bad field in " + path);
    }
    records.push_back(std::move(rec));
  }
  return records;
}

}  // namespace forage
