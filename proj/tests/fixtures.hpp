#pragma once

#include <queue>
#include <random>
#include <utility>
#include <vector>

#include "forage/doubled.hpp"
#include "forage/errors.hpp"
#include "forage/graph.hpp"

namespace fixtures {

/// Two triangles sharing vertex 2; delta(0,4) = 2 and removing either goal
/// keeps the rest connected, so goals (0,4) form a valid doubled system.
inline forage::Graph bowtie() {
  forage::Graph g;
  g.V = 5;
  g.adj = {{1, 2}, {0, 2}, {0, 1, 3, 4}, {2, 4}, {2, 3}};
  g.coords = {{0.0, 0.0}, {0.0, 1.0}, {1.0, 0.5}, {2.0, 0.0}, {2.0, 1.0}};
  for (int v = 0; v < g.V; ++v) g.cells.emplace_back(0, v);
  return g;
}

/// Random obstacle lattice plus a goal pair that passes every doubled-system
/// check; retries until one does.
inline forage::DoubledGraph random_doubled(std::mt19937_64& rng, int min_dim = 3,
                                           int max_dim = 8,
                                           double max_obstacle_rate = 0.25) {
  std::uniform_int_distribution<int> dim(min_dim, max_dim);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (;;) {
    const int rows = dim(rng);
    const int cols = dim(rng);
    const double rate = unif(rng) * max_obstacle_rate;
    std::vector<std::pair<int, int>> obstacles;
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) {
        if (unif(rng) < rate) obstacles.emplace_back(r, c);
      }
    }
    forage::Graph g;
    try {
      g = forage::build_triangular_lattice(rows, cols, obstacles);
    } catch (const forage::Error&) {
      continue;
    }
    if (g.V < 4) continue;
    std::uniform_int_distribution<int> pick(0, g.V - 1);
    for (int attempt = 0; attempt < 10; ++attempt) {
      const int s = pick(rng);
      const int t = pick(rng);
      if (s == t) continue;
      try {
        return forage::build_doubled(g, s, t);
      } catch (const forage::Error&) {
      }
    }
  }
}

/// Local BFS, independent of graph.cpp: hop distances from src that never
/// pass through `skip`; -1 where unreachable.
inline std::vector<int> hops_avoiding(const forage::Graph& g, int src, int skip) {
  std::vector<int> dist(g.V, -1);
  std::queue<int> q;
  dist[src] = 0;
  q.push(src);
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (int j : g.adj[u]) {
      if (j == skip || dist[j] >= 0) continue;
      dist[j] = dist[u] + 1;
      q.push(j);
    }
  }
  if (skip != src) dist[skip] = -1;
  return dist;
}

/// Path-probability enumeration for one copy of the optimal flow: every
/// greedy descent from `u` toward the goal carries prob/(branching product);
/// mass entering the goal is dropped (it feeds the other copy).
inline void enumerate_flow(const forage::Graph& g, const std::vector<int>& dist_to_goal, int u,
                           double prob, std::vector<double>& mass) {
  mass[u] += prob;
  int best = -1;
  for (int j : g.adj[u]) {
    if (dist_to_goal[j] < 0) continue;
    if (best < 0 || dist_to_goal[j] < best) best = dist_to_goal[j];
  }
  if (best < 0 || dist_to_goal[u] == 0) return;
  int m = 0;
  for (int j : g.adj[u]) {
    if (dist_to_goal[j] == best) ++m;
  }
  for (int j : g.adj[u]) {
    if (dist_to_goal[j] != best || dist_to_goal[j] == 0) continue;
    enumerate_flow(g, dist_to_goal, j, prob / m, mass);
  }
}

/// Brute-force counterpart of optimal_distribution, built from scratch on the
/// base graph; only usable on small fixtures (exponential path counts).
inline std::vector<double> enumerate_y_bar(const forage::DoubledGraph& dg) {
  const forage::Graph& g = dg.base;
  const double start = 1.0 / (2.0 * dg.k);
  std::vector<double> mass1(g.V, 0.0), mass2(g.V, 0.0);
  enumerate_flow(g, hops_avoiding(g, dg.t, dg.s), dg.s, start, mass1);
  enumerate_flow(g, hops_avoiding(g, dg.s, dg.t), dg.t, start, mass2);
  std::vector<double> y(dg.dim(), 0.0);
  for (int v = 0; v < g.V; ++v) {
    y[dg.idx(1, v)] = mass1[v];
    y[dg.idx(2, v)] = mass2[v];
  }
  y[dg.removed1()] = 0.0;
  y[dg.removed2()] = 0.0;
  return y;
}

}  // namespace fixtures
