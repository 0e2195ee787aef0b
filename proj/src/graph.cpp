#include "forage/graph.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <set>
#include <stdexcept>
#include <string>

namespace forage {

std::optional<int> Graph::vertex_at(int row, int col) const {
  for (int v = 0; v < V; ++v) {
    if (cells[v].first == row && cells[v].second == col) return v;
  }
  return std::nullopt;
}

namespace {

// Neighbor cell offsets; odd rows sit half a cell to the right, which flips
// the diagonal column offsets.
std::array<std::pair<int, int>, 6> cell_neighbors(int row, int col) {
  const bool odd = (row % 2) != 0;
  const int up_left = odd ? col : col - 1;
  const int up_right = odd ? col + 1 : col;
  return {{{row, col - 1},
           {row, col + 1},
           {row - 1, up_left},
           {row - 1, up_right},
           {row + 1, up_left},
           {row + 1, up_right}}};
}

}  // namespace

Graph build_triangular_lattice(int rows, int cols,
                               const std::vector<std::pair<int, int>>& obstacles) {
  if (rows < 2 || cols < 2) {
    throw std::invalid_argument("lattice needs rows >= 2 and cols >= 2");
  }
  std::set<std::pair<int, int>> blocked;
  for (const auto& cell : obstacles) {
    if (cell.first < 0 || cell.first >= rows || cell.second < 0 || cell.second >= cols) {
      throw std::invalid_argument("obstacle cell (" + std::to_string(cell.first) + "," +
                                  std::to_string(cell.second) + ") outside the grid");
    }
    blocked.insert(cell);
  }

  Graph g;
  std::vector<int> id(static_cast<std::size_t>(rows) * cols, -1);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (blocked.count({r, c})) continue;
      id[static_cast<std::size_t>(r) * cols + c] = g.V++;
      g.cells.emplace_back(r, c);
      g.coords.emplace_back(c + (r % 2 ? 0.5 : 0.0), r * std::sqrt(3.0) / 2.0);
    }
  }
  if (g.V == 0) throw DisconnectedGraph("every cell is an obstacle");

  g.adj.resize(g.V);
  for (int v = 0; v < g.V; ++v) {
    const auto [r, c] = g.cells[v];
    for (const auto& [nr, nc] : cell_neighbors(r, c)) {
      if (nr < 0 || nr >= rows || nc < 0 || nc >= cols) continue;
      const int u = id[static_cast<std::size_t>(nr) * cols + nc];
      if (u >= 0) g.adj[v].push_back(u);
    }
    std::sort(g.adj[v].begin(), g.adj[v].end());
  }

  const ValidationReport report = validate(g);
  if (!report.connected) throw DisconnectedGraph("obstacles split the lattice");
  if (!report.odd_cycle) throw BipartiteGraph("obstacles removed every odd cycle");
  return g;
}

ValidationReport validate(const Graph& g) {
  ValidationReport report;
  if (g.V == 0) return report;
  std::vector<int> color(g.V, -1);
  color[0] = 0;
  std::deque<int> queue{0};
  int reached = 1;
  bool bipartite = true;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int v : g.adj[u]) {
      if (color[v] < 0) {
        color[v] = 1 - color[u];
        ++reached;
        queue.push_back(v);
      } else if (color[v] == color[u]) {
        bipartite = false;
      }
    }
  }
  report.connected = reached == g.V;
  report.odd_cycle = !bipartite;
  return report;
}

std::vector<int> bfs_hops(const Graph& g, int source, int skip) {
  std::vector<int> dist(g.V, -1);
  dist[source] = 0;
  std::deque<int> queue{source};
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int v : g.adj[u]) {
      if (v == skip || dist[v] >= 0) continue;
      dist[v] = dist[u] + 1;
      queue.push_back(v);
    }
  }
  return dist;
}

ShortestPathStructure shortest_paths(const Graph& g, int source) {
  ShortestPathStructure sp;
  sp.source = source;
  sp.dist = bfs_hops(g, source);
  sp.dag_parents.resize(g.V);
  for (int v = 0; v < g.V; ++v) {
    if (sp.dist[v] <= 0) continue;
    for (int u : g.adj[v]) {
      if (sp.dist[u] == sp.dist[v] - 1) sp.dag_parents[v].push_back(u);
    }
  }
  return sp;
}

int diameter(const Graph& g) {
  int best = 0;
  for (int v = 0; v < g.V; ++v) {
    for (int d : bfs_hops(g, v)) best = std::max(best, d);
  }
  return best;
}

OptimalPathSet optimal_path_vertices(const Graph& g, int s, int t) {
  OptimalPathSet result;
  const std::vector<int> ds = bfs_hops(g, s);
  const std::vector<int> dt = bfs_hops(g, t);
  result.k = ds[t];
  result.on_path.assign(g.V, 0);
  for (int v = 0; v < g.V; ++v) {
    if (ds[v] >= 0 && dt[v] >= 0 && ds[v] + dt[v] == result.k) result.on_path[v] = 1;
  }

  // Prefix counts over the BFS DAG, processed in distance order.
  result.path_counts.assign(g.V, 0);
  std::vector<int> order(g.V);
  for (int v = 0; v < g.V; ++v) order[v] = v;
  std::sort(order.begin(), order.end(), [&](int a, int b) { return ds[a] < ds[b]; });
  result.path_counts[s] = 1;
  for (int v : order) {
    if (v == s || ds[v] < 0) continue;
    std::uint64_t total = 0;
    for (int u : g.adj[v]) {
      if (ds[u] == ds[v] - 1) total += result.path_counts[u];
    }
    result.path_counts[v] = total;
  }
  return result;
}

}  // namespace forage
