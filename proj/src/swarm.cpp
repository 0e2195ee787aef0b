#include "forage/swarm.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "forage/kernels.hpp"
#include "forage/rng.hpp"

namespace forage {

SwarmState init_swarm(const DoubledGraph& dg, long long n, std::uint64_t seed, double w0) {
  if (n < 1) throw std::invalid_argument("need at least one agent");
  SwarmState st;
  st.t = 0;
  st.seed = seed;
  st.positions.assign(static_cast<std::size_t>(n),
                      static_cast<std::uint32_t>(dg.idx(1, dg.s)));
  st.w.assign(dg.dim(), 0.0);
  if (w0 != 0.0) {
    for (int i = 0; i < dg.dim(); ++i) {
      if (dg.active(i)) st.w[i] = w0;
    }
  }
  return st;
}

namespace {

// Per-step scratch shared between occupancy counting, the lazily materialized
// kernel columns of occupied vertices, and the weight update.
struct StepScratch {
  std::vector<std::int64_t> counts;
  std::vector<int> column_slot;  // doubled index -> slot in the column cache, -1 if empty
  std::vector<int> cache_rows;
  std::vector<double> cache_cum;  // per-column inclusive prefix sums
  std::vector<int> cache_ptr;    // slot -> [begin,end) into cache_rows/cache_cum
  std::vector<int> occupied;
  std::vector<double> diag;
};

}  // namespace

void swarm_step(const DoubledGraph& dg, SwarmState& st, const DynamicsConfig& cfg) {
  const int dim = dg.dim();
  const long long n = static_cast<long long>(st.positions.size());

  thread_local StepScratch scratch;
  scratch.counts.assign(dim, 0);
  for (std::uint32_t p : st.positions) ++scratch.counts[p];

  // Materialize kernel columns only where agents stand, as cumulative sums for
  // inverse-CDF sampling over ascending row indices.
  scratch.column_slot.assign(dim, -1);
  scratch.cache_rows.clear();
  scratch.cache_cum.clear();
  scratch.cache_ptr.assign(1, 0);
  {
    std::vector<int> rows(dg.base.V + 1);
    std::vector<double> vals(dg.base.V + 1);
    for (int col = 0; col < dim; ++col) {
      if (scratch.counts[col] == 0) continue;
      const int count = pf_column(dg, st.w, cfg.eps, col, rows.data(), vals.data());
      scratch.column_slot[col] = static_cast<int>(scratch.cache_ptr.size()) - 1;
      double cum = 0.0;
      for (int k = 0; k < count; ++k) {
        cum += vals[k];
        scratch.cache_rows.push_back(rows[k]);
        scratch.cache_cum.push_back(cum);
      }
      scratch.cache_ptr.push_back(static_cast<int>(scratch.cache_rows.size()));
    }
  }

  // Plain pointers into this call's scratch: the parallel region below must
  // not touch `scratch` directly, or workers would see their own (empty)
  // thread_local instances.
  {
    const int* column_slot = scratch.column_slot.data();
    const int* cache_ptr = scratch.cache_ptr.data();
    const int* cache_rows = scratch.cache_rows.data();
    const double* cache_cum = scratch.cache_cum.data();
    std::uint32_t* positions = st.positions.data();
    const std::uint64_t seed = st.seed;
    const std::uint64_t now = static_cast<std::uint64_t>(st.t);
#pragma omp parallel for schedule(static)
    for (long long a = 0; a < n; ++a) {
      const int col = static_cast<int>(positions[a]);
      const int slot = column_slot[col];
      const int begin = cache_ptr[slot];
      const int end = cache_ptr[slot + 1];
      const double u = u01(counter_hash(seed, static_cast<std::uint64_t>(a), now));
      int next = cache_rows[end - 1];  // u beyond the last cum (rounding) lands here
      for (int k = begin; k < end; ++k) {
        if (u < cache_cum[k]) {
          next = cache_rows[k];
          break;
        }
      }
      positions[a] = static_cast<std::uint32_t>(next);
    }
  }

  // Weight update from the pre-move occupancy (time-t state), matching the
  // mean-field simultaneous update. The reward diagonal is evaluated for the
  // occupied vertices first, before any w entry changes, since V(W) reads
  // neighbor weights; unoccupied vertices only evaporate.
  const int V = dg.V();
  scratch.occupied.clear();
  scratch.diag.clear();
  for (int i = 0; i < dim; ++i) {
    if (scratch.counts[i] == 0 || !dg.active(i)) continue;
    const int copy = i < V ? 1 : 2;
    const int b = copy == 1 ? i : i - V;
    const int offset = copy == 1 ? 0 : V;
    double best = 0.0;
    for (int j : dg.base.adj[b]) best = std::max(best, st.w[offset + j]);
    const bool rewarded = (copy == 1 && b == dg.s) || (copy == 2 && b == dg.t);
    scratch.occupied.push_back(i);
    scratch.diag.push_back(1.0 + (rewarded ? cfg.r : 0.0) + cfg.lambda * best);
  }
  const double keep = 1.0 - cfg.rho;
#pragma omp parallel for schedule(static)
  for (int i = 0; i < dim; ++i) st.w[i] *= keep;
  for (std::size_t k = 0; k < scratch.occupied.size(); ++k) {
    st.w[scratch.occupied[k]] += cfg.rho * scratch.diag[k];
  }

  ++st.t;
}

std::vector<double> occupancy(const DoubledGraph& dg, const SwarmState& st) {
  std::vector<std::int64_t> counts(dg.dim(), 0);
  for (std::uint32_t p : st.positions) ++counts[p];
  std::vector<double> q(dg.dim());
  const double n = static_cast<double>(st.positions.size());
  for (int i = 0; i < dg.dim(); ++i) q[i] = static_cast<double>(counts[i]) / n;
  return q;
}

SwarmTrajectory run_swarm(const DoubledGraph& dg, const DynamicsConfig& cfg, long long n,
                          long long horizon, std::uint64_t seed, long long stride) {
  if (horizon < 1) throw std::invalid_argument("horizon must be at least 1");
  if (stride < 1) stride = horizon;
  SwarmState st = init_swarm(dg, n, seed, cfg.w0);
  SwarmTrajectory traj;
  traj.snapshots.push_back({0, occupancy(dg, st), st.w});
  for (long long step_i = 1; step_i <= horizon; ++step_i) {
    swarm_step(dg, st, cfg);
    if (step_i % stride == 0 || step_i == horizon) {
      traj.snapshots.push_back({st.t, occupancy(dg, st), st.w});
    }
  }
  return traj;
}

}  // namespace forage
