#include "forage/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <vector>

#include "forage/kernels.hpp"
#include "forage/mean_field.hpp"

namespace forage {

std::vector<double> closed_form_w_inf(const DoubledGraph& dg, double r, double lambda) {
  const int V = dg.V();
  // Distances to the rewarded vertex of each copy, never passing through the
  // other goal (its image in this copy is removed and carries weight 0).
  const std::vector<int> d1 = bfs_hops(dg.base, dg.s, dg.t);
  const std::vector<int> d2 = bfs_hops(dg.base, dg.t, dg.s);
  const double denom = 1.0 - lambda * lambda;
  std::vector<double> w(dg.dim(), 0.0);
  for (int v = 0; v < V; ++v) {
    if (v != dg.t) w[dg.idx(1, v)] = (1.0 + lambda + std::pow(lambda, d1[v]) * r) / denom;
    if (v != dg.s) w[dg.idx(2, v)] = (1.0 + lambda + std::pow(lambda, d2[v]) * r) / denom;
  }
  return w;
}

double fixed_point_residual(const std::vector<double>& w, const DoubledGraph& dg, double r,
                            double lambda) {
  const std::vector<double> diag = reward_diagonal(dg, w, r, lambda);
  double res = 0.0;
  for (int i = 0; i < dg.dim(); ++i) {
    if (dg.active(i)) res = std::max(res, std::abs(w[i] - diag[i]));
  }
  return res;
}

namespace {

// Mass-splitting DP along the gradient DAG of one copy: the closed-form
// weights strictly decrease with dist_to_goal, so the argmax successors of u
// are its neighbors of minimum distance (the skipped origin of the BFS is
// never one: its weight sits at the removed doubled vertex, pinned 0).
// Writes mass for the k layers before the goal into y_bar at `offset`; the
// goal itself seeds the other copy.
void flow_copy(const DoubledGraph& dg, int origin, int goal,
               const std::vector<int>& dist_to_goal, int offset,
               std::vector<double>& y_bar) {
  const int k = dg.k;
  std::vector<double> mass(dg.V(), 0.0);
  mass[origin] = 1.0 / (2.0 * k);
  std::vector<int> layer{origin};
  for (int step = 0; step < k; ++step) {
    for (int u : layer) y_bar[offset + u] = mass[u];
    std::set<int> next;
    for (int u : layer) {
      int best = -1;
      int m = 0;
      for (int j : dg.base.adj[u]) {
        const int d = dist_to_goal[j];
        if (d < 0) continue;
        if (best < 0 || d < best) {
          best = d;
          m = 1;
        } else if (d == best) {
          ++m;
        }
      }
      const double share = mass[u] / m;
      for (int j : dg.base.adj[u]) {
        if (dist_to_goal[j] != best) continue;
        if (j != goal) mass[j] += share;
        if (j != goal) next.insert(j);
      }
      mass[u] = 0.0;
    }
    layer.assign(next.begin(), next.end());
  }
}

}  // namespace

OptimalDistribution optimal_distribution(const DoubledGraph& dg) {
  OptimalDistribution od;
  od.k = dg.k;
  od.y_bar.assign(dg.dim(), 0.0);
  // Copy-1 agents follow w2, whose closed form decreases with distance to t
  // (excluding s); copy-2 agents follow w1 symmetrically.
  const std::vector<int> d2 = bfs_hops(dg.base, dg.t, dg.s);
  const std::vector<int> d1 = bfs_hops(dg.base, dg.s, dg.t);
  flow_copy(dg, dg.s, dg.t, d2, 0, od.y_bar);
  flow_copy(dg, dg.t, dg.s, d1, dg.V(), od.y_bar);
  return od;
}

namespace {

// All-branch greedy walk: from `origin`, repeatedly take every argmax
// neighbor under `w_view`; true iff after exactly k layers the frontier is
// precisely {goal}.
bool greedy_reaches(const DoubledGraph& dg, int origin, int goal,
                    const double* w_view) {
  std::set<int> frontier{origin};
  for (int step = 0; step < dg.k; ++step) {
    std::set<int> next;
    for (int u : frontier) {
      double wmax = 0.0;
      for (int j : dg.base.adj[u]) wmax = std::max(wmax, w_view[j]);
      const double threshold = wmax * (1.0 - kTieRelTol);
      for (int j : dg.base.adj[u]) {
        if (w_view[j] >= threshold) next.insert(j);
      }
    }
    frontier.swap(next);
    if (frontier.size() > static_cast<std::size_t>(dg.V())) return false;
  }
  return frontier.size() == 1 && *frontier.begin() == goal;
}

}  // namespace

bool is_optimal_weights(const std::vector<double>& w, const DoubledGraph& dg) {
  // Seeking agents (copy 1) walk by w2; returning agents (copy 2) by w1.
  return greedy_reaches(dg, dg.s, dg.t, w.data() + dg.V()) &&
         greedy_reaches(dg, dg.t, dg.s, w.data());
}

std::vector<double> stationary_eigenvector(const ColumnStochasticMatrix& p, double tol,
                                           const EigenvectorOptions& opts) {
  const int n = p.n;
  std::vector<char> support;
  if (!opts.support.empty()) {
    support = opts.support;
  } else {
    // Default support: columns that carry mass (removed vertices are empty).
    support.assign(n, 0);
    for (int c = 0; c < n; ++c) {
      if (p.col_ptr[c + 1] > p.col_ptr[c]) support[c] = 1;
    }
  }
  int active = 0;
  for (char s : support) active += s;
  if (active == 0) throw NoConvergence("empty support");

  std::vector<double> y(n, 0.0);
  for (int i = 0; i < n; ++i) {
    if (support[i]) y[i] = 1.0 / active;
  }

  const CsrMatrix pr = to_csr(p);
  std::vector<double> y_next(n, 0.0);
  for (long long iter = 0; iter < opts.max_iters; ++iter) {
    matvec(pr, y, y_next);
    for (int i = 0; i < n; ++i) {
      if (!support[i]) y_next[i] = 0.0;
    }
    double residual = 0.0;
    for (int i = 0; i < n; ++i) residual += std::abs(y_next[i] - y[i]);
    if (opts.lazy) {
      for (int i = 0; i < n; ++i) y_next[i] = 0.5 * (y_next[i] + y[i]);
    }
    double total = std::accumulate(y_next.begin(), y_next.end(), 0.0);
    for (int i = 0; i < n; ++i) y_next[i] /= total;
    y.swap(y_next);
    if (residual < tol) return y;
  }
  throw NoConvergence("power iteration did not reach tolerance");
}

double rate_bound(double eps, int delta_star) {
  const double e = 1.0 + 2.0 * delta_star;
  return std::pow(1.0 - std::pow(eps, e), 1.0 / e);
}

double rate_bound_proof_variant(double eps, int delta_star, int g_star) {
  const double mixed = eps / (1.0 + (g_star - 1.0) * eps);
  const double e = 1.0 + 2.0 * delta_star;
  return std::pow(1.0 - std::pow(mixed, e), 1.0 / e);
}

std::vector<EpsGapRow> epsilon_gap(const DoubledGraph& dg, const std::vector<double>& eps_list,
                                   const DynamicsConfig& cfg, long long max_t, double tol) {
  const OptimalDistribution od = optimal_distribution(dg);
  std::vector<EpsGapRow> rows(eps_list.size());
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    if (!(eps_list[i] > 0.0 && eps_list[i] <= 1.0)) {
      throw InvalidEpsilon("epsilon sweep values must lie in (0,1]");
    }
    DynamicsConfig local = cfg;
    local.eps = eps_list[i];
    const auto [state, report] = run_mean_field(dg, local, max_t, tol);
    double gap = 0.0;
    for (int j = 0; j < dg.dim(); ++j) gap += std::abs(state.y[j] - od.y_bar[j]);
    rows[i] = {eps_list[i], gap, report.converged};
  }
  return rows;
}

}  // namespace forage
