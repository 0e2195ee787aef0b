#pragma once

#include <cstdint>
#include <vector>

#include "forage/doubled.hpp"
#include "forage/params.hpp"

namespace forage {

struct SwarmState {
  long long t = 0;
  std::vector<std::uint32_t> positions;  // per-agent doubled index, never removed
  std::vector<double> w;
  std::uint64_t seed = 0;
};

/// All n agents at idx(1,s); w = w0 on active vertices.
SwarmState init_swarm(const DoubledGraph& dg, long long n, std::uint64_t seed,
                      double w0 = 0.0);

/// One step of the finite system: every agent samples its next vertex from
/// its P^f(w(t),eps) column (inverse CDF over ascending row indices, one
/// counter-based draw keyed by (seed, agent, t)); w then advances using the
/// time-t occupancy sgn(counts), mirroring the mean-field simultaneous update.
/// Columns are materialized only for occupied vertices.
void swarm_step(const DoubledGraph& dg, SwarmState& st, const DynamicsConfig& cfg);

/// counts / n over the doubled index space; sums to 1 exactly.
std::vector<double> occupancy(const DoubledGraph& dg, const SwarmState& st);

struct SwarmSnapshot {
  long long t = 0;
  std::vector<double> qhat;
  std::vector<double> w;
};

struct SwarmTrajectory {
  std::vector<SwarmSnapshot> snapshots;  // t = 0, stride, 2*stride, ..., horizon
};

/// Deterministic given the seed. Snapshots every `stride` steps; the final
/// step `horizon` is always included.
SwarmTrajectory run_swarm(const DoubledGraph& dg, const DynamicsConfig& cfg, long long n,
                          long long horizon, std::uint64_t seed, long long stride = 50);

}  // namespace forage
