#pragma once

#include <string>
#include <vector>

#include "forage/graph.hpp"

namespace forage {

/// Marker overlay for the heatmap: goal vertices and optional per-vertex
/// occupancy (base-vertex mass; drives marker radii).
struct HeatmapMarkers {
  int s_vertex = -1;
  int t_vertex = -1;
  std::vector<double> occupancy;  // empty = no occupancy markers
};

/// One circle per vertex colored on a blue-white-red diverging scale centered
/// at 0 (all-zero input renders uniform white), occupancy as scaled dark
/// markers, goals as triangles. Requires g.coords (MissingCoords otherwise).
void write_heatmap_svg(const Graph& g, const std::vector<double>& values,
                       const HeatmapMarkers& markers, const std::string& path);

}  // namespace forage
