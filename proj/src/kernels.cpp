#include "forage/kernels.hpp"

#include <algorithm>

#include "forage/errors.hpp"

namespace forage {

ColumnStochasticMatrix uniform_walk(const Graph& g) {
  ColumnStochasticMatrix m;
  m.n = g.V;
  m.col_ptr.assign(g.V + 1, 0);
  for (int i = 0; i < g.V; ++i) {
    const double share = 1.0 / g.degree(i);
    for (int j : g.adj[i]) {
      m.row_idx.push_back(j);
      m.val.push_back(share);
    }
    m.col_ptr[i + 1] = static_cast<int>(m.row_idx.size());
  }
  return m;
}

ColumnStochasticMatrix gradient_matrix(const Graph& g, std::span<const double> w) {
  ColumnStochasticMatrix m;
  m.n = g.V;
  m.col_ptr.assign(g.V + 1, 0);
  for (int i = 0; i < g.V; ++i) {
    double wmax = 0.0;
    for (int j : g.adj[i]) wmax = std::max(wmax, w[j]);
    const double threshold = wmax * (1.0 - kTieRelTol);
    int ties = 0;
    for (int j : g.adj[i]) {
      if (w[j] >= threshold) ++ties;
    }
    const double share = 1.0 / ties;
    for (int j : g.adj[i]) {
      if (w[j] < threshold) continue;
      m.row_idx.push_back(j);
      m.val.push_back(share);
    }
    m.col_ptr[i + 1] = static_cast<int>(m.row_idx.size());
  }
  return m;
}

ColumnStochasticMatrix epsilon_greedy(const Graph& g, std::span<const double> w, double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) {
    throw InvalidEpsilon("epsilon must lie in (0,1]");
  }
  ColumnStochasticMatrix m;
  m.n = g.V;
  m.col_ptr.assign(g.V + 1, 0);
  for (int i = 0; i < g.V; ++i) {
    double wmax = 0.0;
    for (int j : g.adj[i]) wmax = std::max(wmax, w[j]);
    const double threshold = wmax * (1.0 - kTieRelTol);
    int ties = 0;
    for (int j : g.adj[i]) {
      if (w[j] >= threshold) ++ties;
    }
    const double explore = eps / g.degree(i);
    const double exploit = (1.0 - eps) / ties;
    for (int j : g.adj[i]) {
      m.row_idx.push_back(j);
      m.val.push_back(explore + (w[j] >= threshold ? exploit : 0.0));
    }
    m.col_ptr[i + 1] = static_cast<int>(m.row_idx.size());
  }
  return m;
}

std::vector<double> reward_diagonal(const DoubledGraph& dg, const std::vector<double>& w,
                                    double r, double lambda) {
  const int V = dg.V();
  std::vector<double> diag(dg.dim(), 0.0);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < dg.dim(); ++i) {
    if (!dg.active(i)) continue;
    const int copy = i < V ? 1 : 2;
    const int b = copy == 1 ? i : i - V;
    const int offset = copy == 1 ? 0 : V;  // V(W) reads the copy's own weights
    double best = 0.0;
    for (int j : dg.base.adj[b]) best = std::max(best, w[offset + j]);
    const bool rewarded = (copy == 1 && b == dg.s) || (copy == 2 && b == dg.t);
    diag[i] = 1.0 + (rewarded ? r : 0.0) + lambda * best;
  }
  return diag;
}

void weight_step(std::vector<double>& w, const std::vector<char>& occupied,
                 const std::vector<double>& diag, double rho) {
  const int n = static_cast<int>(w.size());
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    w[i] = (1.0 - rho) * w[i] + (occupied[i] ? rho * diag[i] : 0.0);
  }
}

namespace ref {

void weight_step(std::vector<double>& w, const std::vector<char>& occupied,
                 const std::vector<double>& diag, double rho) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] = (1.0 - rho) * w[i] + (occupied[i] ? rho * diag[i] : 0.0);
  }
}

}  // namespace ref
}  // namespace forage
