#pragma once

#include <string>
#include <vector>

namespace forage {

struct TimeseriesRecord {
  long long t = 0;
  std::string metric;
  double value = 0.0;
};

/// 12-significant-digit shortest representation (%.12g).
std::string format_value(double v);

/// Header `t,metric,value`, LF endings, rows sorted by (t, metric).
void write_timeseries_csv(std::vector<TimeseriesRecord> records, const std::string& path);

/// Two-column helper for vector dumps: header `index,value`, rows by index.
void write_indexed_csv(const std::vector<double>& values, const std::string& path);

/// Parse a file produced by write_timeseries_csv (round-trip checks).
std::vector<TimeseriesRecord> read_timeseries_csv(const std::string& path);

}  // namespace forage
