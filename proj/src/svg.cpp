#include "forage/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "forage/errors.hpp"

namespace forage {

namespace {

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

// Diverging blue-white-red ramp over x in [-1, 1].
std::string ramp_color(double x) {
  x = std::clamp(x, -1.0, 1.0);
  const double lo[3] = {33.0, 102.0, 172.0};   // blue end
  const double mid[3] = {247.0, 247.0, 247.0}; // neutral
  const double hi[3] = {178.0, 24.0, 43.0};    // red end
  double rgb[3];
  for (int c = 0; c < 3; ++c) {
    rgb[c] = x < 0.0 ? mid[c] + (-x) * (lo[c] - mid[c]) : mid[c] + x * (hi[c] - mid[c]);
  }
  char buf[16];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", static_cast<int>(std::lround(rgb[0])),
                static_cast<int>(std::lround(rgb[1])), static_cast<int>(std::lround(rgb[2])));
  return buf;
}

}  // namespace

void write_heatmap_svg(const Graph& g, const std::vector<double>& values,
                       const HeatmapMarkers& markers, const std::string& path) {
  if (g.coords.size() != static_cast<std::size_t>(g.V)) {
    throw MissingCoords("graph has no drawing coordinates");
  }
  if (values.size() != static_cast<std::size_t>(g.V)) {
    throw DimensionMismatch("heatmap values do not match vertex count");
  }
  if (!markers.occupancy.empty() &&
      markers.occupancy.size() != static_cast<std::size_t>(g.V)) {
    throw DimensionMismatch("occupancy marker vector does not match vertex count");
  }

  double xmin = g.coords[0].first, xmax = xmin;
  double ymin = g.coords[0].second, ymax = ymin;
  for (const auto& [x, y] : g.coords) {
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  }
  const double scale = 40.0;
  const double margin = 30.0;
  const double width = (xmax - xmin) * scale + 2.0 * margin;
  const double height = (ymax - ymin) * scale + 2.0 * margin;
  auto px = [&](int v) { return margin + (g.coords[v].first - xmin) * scale; };
  // Flip so increasing lattice row runs up the page.
  auto py = [&](int v) { return margin + (ymax - g.coords[v].second) * scale; };

  double vextent = 0.0;
  for (const double v : values) vextent = std::max(vextent, std::abs(v));

  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\""
      << num(height) << "\" viewBox=\"0 0 " << num(width) << " " << num(height) << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

  // Edges underneath so the lattice structure stays visible.
  out << "<g stroke=\"#cccccc\" stroke-width=\"1\">\n";
  for (int u = 0; u < g.V; ++u) {
    for (const int v : g.adj[u]) {
      if (v <= u) continue;
      out << "<line x1=\"" << num(px(u)) << "\" y1=\"" << num(py(u)) << "\" x2=\""
          << num(px(v)) << "\" y2=\"" << num(py(v)) << "\"/>\n";
    }
  }
  out << "</g>\n";

  const double r = 0.32 * scale;
  for (int v = 0; v < g.V; ++v) {
    const double x = vextent > 0.0 ? values[v] / vextent : 0.0;
    out << "<circle cx=\"" << num(px(v)) << "\" cy=\"" << num(py(v)) << "\" r=\"" << num(r)
        << "\" fill=\"" << ramp_color(x) << "\" stroke=\"#555555\" stroke-width=\"0.5\"/>\n";
  }

  if (!markers.occupancy.empty()) {
    double qmax = 0.0;
    for (const double q : markers.occupancy) qmax = std::max(qmax, q);
    if (qmax > 0.0) {
      out << "<g fill=\"#222222\" fill-opacity=\"0.85\">\n";
      for (int v = 0; v < g.V; ++v) {
        const double q = markers.occupancy[v];
        if (q <= 0.0) continue;
        const double rq = 0.28 * scale * std::sqrt(q / qmax);
        out << "<circle cx=\"" << num(px(v)) << "\" cy=\"" << num(py(v)) << "\" r=\""
            << num(rq) << "\"/>\n";
      }
      out << "</g>\n";
    }
  }

  auto triangle = [&](int v, bool up, const char* label) {
    const double cx = px(v), cy = py(v);
    const double h = 0.55 * scale;
    const double sgn = up ? -1.0 : 1.0;
    out << "<polygon points=\"" << num(cx) << "," << num(cy + sgn * h) << " "
        << num(cx - 0.5 * h) << "," << num(cy - sgn * 0.6 * h) << " " << num(cx + 0.5 * h)
        << "," << num(cy - sgn * 0.6 * h)
        << "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"2\"><title>" << label
        << "</title></polygon>\n";
  };
  if (markers.s_vertex >= 0 && markers.s_vertex < g.V) triangle(markers.s_vertex, true, "S");
  if (markers.t_vertex >= 0 && markers.t_vertex < g.V) triangle(markers.t_vertex, false, "T");

  out << "</svg>\n";
  if (!out) throw IoError("failed while writing " + path);
}

}  // namespace forage
