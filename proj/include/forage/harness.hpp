#pragma once

#include <cstdint>
#include <vector>

#include "forage/doubled.hpp"
#include "forage/params.hpp"

namespace forage {

/// Replica statistics of the error nu(n,t) = qhat(n,t) - y_inf.
/// e_norm is the l2 norm of the replica mean of nu per sampled t; var_norm the
/// l2 norm of the per-vertex population variance (divisor K).
struct ErrorStats {
  long long n = 0;
  std::vector<long long> times;
  std::vector<double> e_norm;
  std::vector<double> var_norm;
  int K = 0;
  std::uint64_t base_seed = 0;
};

/// Streaming replica aggregator; exposed separately so the reduction can be
/// tested against exact inputs.
class ErrorStatsAccumulator {
 public:
  ErrorStatsAccumulator(std::size_t n_times, std::size_t dim);
  /// nu for one replica, one sampled time index.
  void add(std::size_t time_index, const std::vector<double>& nu);
  /// Finalize over K replicas (every time index must have K contributions).
  void finalize(int K, std::vector<double>& e_norm, std::vector<double>& var_norm) const;

 private:
  std::size_t dim_;
  std::vector<std::vector<double>> sum_, sum_sq_;
};

/// K seeded replicas (seed = base_seed + k, aggregated in k order) against a
/// precomputed mean-field stationary y_inf of the same dynamics. Sampled times
/// are 0, stride, 2*stride, ... plus horizon itself. Requires K >= 2.
ErrorStats error_stats(const DoubledGraph& dg, const DynamicsConfig& cfg, long long n,
                       int K, long long horizon, std::uint64_t base_seed,
                       const std::vector<double>& y_inf, long long stride = 50);

/// error_stats per agent count, sharing one mean-field reference computed to
/// tolerance tol (at most max_t steps).
std::vector<ErrorStats> agent_sweep(const DoubledGraph& dg, const DynamicsConfig& cfg,
                                    const std::vector<long long>& n_list, int K,
                                    long long horizon, std::uint64_t base_seed,
                                    long long max_t, double tol, long long stride = 50);

struct Table2Row {
  double r = 0.0;
  double rho = 0.0;
  long long n = 0;
  double e_norm = 0.0;    // at t = horizon
  double var_norm = 0.0;  // at t = horizon
};

/// One ErrorStats run per (r, rho, n) grid row; the mean-field reference is
/// recomputed whenever (r, rho) changes. Row order is preserved.
std::vector<Table2Row> table2_grid(const DoubledGraph& dg, const DynamicsConfig& base_cfg,
                                   const std::vector<Table2Row>& grid, int K,
                                   long long horizon, std::uint64_t base_seed,
                                   long long max_t, double tol);

}  // namespace forage
