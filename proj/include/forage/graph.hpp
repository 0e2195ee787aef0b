#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "forage/errors.hpp"

namespace forage {

/// Undirected simple graph with dense vertex ids 0..V-1.
/// coords/cells are filled by the lattice builder; coords drive SVG output,
/// cells map (row,col) goal specifications to vertex ids.
struct Graph {
  int V = 0;
  std::vector<std::vector<int>> adj;  // neighbor lists, sorted ascending
  std::vector<std::pair<double, double>> coords;
  std::vector<std::pair<int, int>> cells;

  int degree(int v) const { return static_cast<int>(adj[v].size()); }

  /// Vertex id for a lattice cell, or nullopt if the cell is absent (obstacle
  /// or out of range). Only meaningful on lattice-built graphs.
  std::optional<int> vertex_at(int row, int col) const;
};

struct ValidationReport {
  bool connected = false;
  bool odd_cycle = false;
  bool ok() const { return connected && odd_cycle; }
};

/// BFS tree of all shortest paths from one source.
struct ShortestPathStructure {
  int source = 0;
  std::vector<int> dist;  // hop counts; -1 where unreachable
  std::vector<std::vector<int>> dag_parents;  // preds at dist-1 on some shortest path
};

/// Vertices lying on at least one shortest s-t path, with prefix path counts.
struct OptimalPathSet {
  int k = 0;  // delta(s,t)
  std::vector<char> on_path;
  std::vector<std::uint64_t> path_counts;  // # distinct shortest s->v paths
};

/// Triangular lattice on a rows x cols cell grid, row-major ids, odd rows
/// shifted +1/2 cell. Obstacle cells are dropped and remaining ids re-densified.
/// Throws DisconnectedGraph / BipartiteGraph when the result violates the
/// simulation assumptions, std::invalid_argument on bad dimensions or obstacles.
Graph build_triangular_lattice(int rows, int cols,
                               const std::vector<std::pair<int, int>>& obstacles = {});

ValidationReport validate(const Graph& g);

/// Hop distances from source; vertices equal to `skip` are excluded from paths
/// (dist[skip] = -1 unless skip == source). skip = -1 disables.
std::vector<int> bfs_hops(const Graph& g, int source, int skip = -1);

ShortestPathStructure shortest_paths(const Graph& g, int source);

/// Max over sources of max hop distance.
int diameter(const Graph& g);

OptimalPathSet optimal_path_vertices(const Graph& g, int s, int t);

}  // namespace forage
