#include "forage/harness.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "forage/mean_field.hpp"
#include "forage/swarm.hpp"

namespace forage {

ErrorStatsAccumulator::ErrorStatsAccumulator(std::size_t n_times, std::size_t dim)
    : dim_(dim),
      sum_(n_times, std::vector<double>(dim, 0.0)),
      sum_sq_(n_times, std::vector<double>(dim, 0.0)) {}

void ErrorStatsAccumulator::add(std::size_t time_index, const std::vector<double>& nu) {
  auto& s = sum_[time_index];
  auto& q = sum_sq_[time_index];
  for (std::size_t i = 0; i < dim_; ++i) {
    s[i] += nu[i];
    q[i] += nu[i] * nu[i];
  }
}

void ErrorStatsAccumulator::finalize(int K, std::vector<double>& e_norm,
                                     std::vector<double>& var_norm) const {
  e_norm.resize(sum_.size());
  var_norm.resize(sum_.size());
  for (std::size_t ti = 0; ti < sum_.size(); ++ti) {
    double e_sq = 0.0;
    double v_sq = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
      const double mean = sum_[ti][i] / K;
      const double var = std::max(0.0, sum_sq_[ti][i] / K - mean * mean);
      e_sq += mean * mean;
      v_sq += var * var;
    }
    e_norm[ti] = std::sqrt(e_sq);
    var_norm[ti] = std::sqrt(v_sq);
  }
}

namespace {

std::vector<long long> sample_times(long long horizon, long long stride) {
  std::vector<long long> times;
  for (long long t = 0; t <= horizon; t += stride) times.push_back(t);
  if (times.back() != horizon) times.push_back(horizon);
  return times;
}

}  // namespace

ErrorStats error_stats(const DoubledGraph& dg, const DynamicsConfig& cfg, long long n, int K,
                       long long horizon, std::uint64_t base_seed,
                       const std::vector<double>& y_inf, long long stride) {
  if (K < 2) throw std::invalid_argument("error statistics need at least two replicas");
  if (static_cast<int>(y_inf.size()) != dg.dim()) {
    throw std::invalid_argument("mean-field reference has the wrong dimension");
  }

  ErrorStats stats;
  stats.n = n;
  stats.K = K;
  stats.base_seed = base_seed;
  stats.times = sample_times(horizon, stride);

  const std::size_t n_times = stats.times.size();
  ErrorStatsAccumulator acc(n_times, dg.dim());

  // Replicas run in parallel blocks; accumulation happens in replica order
  // afterwards so the reduction is identical for any thread count.
#ifdef _OPENMP
  const int block = std::max(1, omp_get_max_threads());
#else
  const int block = 1;
#endif
  std::vector<SwarmTrajectory> results(block);
  for (int k0 = 0; k0 < K; k0 += block) {
    const int this_block = std::min(block, K - k0);
#pragma omp parallel for schedule(static)
    for (int b = 0; b < this_block; ++b) {
      results[b] = run_swarm(dg, cfg, n, horizon, base_seed + k0 + b, stride);
    }
    for (int b = 0; b < this_block; ++b) {
      const auto& snaps = results[b].snapshots;
      if (snaps.size() != n_times) throw std::runtime_error("snapshot count mismatch");
      std::vector<double> nu(dg.dim());
      for (std::size_t ti = 0; ti < n_times; ++ti) {
        for (int i = 0; i < dg.dim(); ++i) nu[i] = snaps[ti].qhat[i] - y_inf[i];
        acc.add(ti, nu);
      }
    }
  }
  acc.finalize(K, stats.e_norm, stats.var_norm);
  return stats;
}

std::vector<ErrorStats> agent_sweep(const DoubledGraph& dg, const DynamicsConfig& cfg,
                                    const std::vector<long long>& n_list, int K,
                                    long long horizon, std::uint64_t base_seed, long long max_t,
                                    double tol, long long stride) {
  if (n_list.empty()) throw std::invalid_argument("agent sweep needs at least one n");
  const auto [state, report] = run_mean_field(dg, cfg, max_t, tol);
  if (!report.converged) {
    throw NoConvergence("mean-field reference did not converge");
  }
  std::vector<ErrorStats> out;
  out.reserve(n_list.size());
  for (long long n : n_list) {
    out.push_back(error_stats(dg, cfg, n, K, horizon, base_seed, state.y, stride));
  }
  return out;
}

std::vector<Table2Row> table2_grid(const DoubledGraph& dg, const DynamicsConfig& base_cfg,
                                   const std::vector<Table2Row>& grid, int K, long long horizon,
                                   std::uint64_t base_seed, long long max_t, double tol) {
  if (grid.empty()) throw std::invalid_argument("empty parameter grid");
  std::vector<Table2Row> out;
  out.reserve(grid.size());
  double last_r = -1.0;
  double last_rho = -1.0;
  std::vector<double> y_inf;
  for (const Table2Row& row : grid) {
    DynamicsConfig cfg = base_cfg;
    cfg.r = row.r;
    cfg.rho = row.rho;
    if (row.r != last_r || row.rho != last_rho) {
      const auto [state, report] = run_mean_field(dg, cfg, max_t, tol);
      if (!report.converged) throw NoConvergence("mean-field reference did not converge");
      y_inf = state.y;
      last_r = row.r;
      last_rho = row.rho;
    }
    const ErrorStats stats =
        error_stats(dg, cfg, row.n, K, horizon, base_seed, y_inf);
    Table2Row done = row;
    done.e_norm = stats.e_norm.back();
    done.var_norm = stats.var_norm.back();
    out.push_back(done);
  }
  return out;
}

}  // namespace forage
