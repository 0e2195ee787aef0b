#include "forage/doubled.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "forage/kernels.hpp"

namespace forage {

DoubledGraph build_doubled(const Graph& g, int s, int t) {
  if (s < 0 || s >= g.V || t < 0 || t >= g.V) {
    throw std::invalid_argument("goal vertex outside the graph");
  }
  const ValidationReport report = validate(g);
  if (!report.connected) throw InvalidGraph("base graph is disconnected");
  if (!report.odd_cycle) throw InvalidGraph("base graph has no odd cycle");

  const std::vector<int> dist = bfs_hops(g, s);
  if (s == t || dist[t] <= 1) {
    throw AdjacentGoals("goals must be more than one hop apart");
  }

  // Strong connectivity of the doubled system: each copy must stay connected
  // with the other copy's goal removed, since paths cannot pass through it.
  const std::vector<int> without_t = bfs_hops(g, s, t);
  const std::vector<int> without_s = bfs_hops(g, t, s);
  for (int v = 0; v < g.V; ++v) {
    if (v != t && without_t[v] < 0) {
      throw InvalidGraph("removing the target disconnects the seeking copy");
    }
    if (v != s && without_s[v] < 0) {
      throw InvalidGraph("removing the source disconnects the returning copy");
    }
  }

  DoubledGraph dg;
  dg.base = g;
  dg.s = s;
  dg.t = t;
  dg.k = dist[t];
  return dg;
}

namespace {

// Appends one kernel column with the cross-copy redirect applied, preserving
// ascending doubled row order.
void append_column(const DoubledGraph& dg, int copy, int b,
                   const ColumnStochasticMatrix& kernel, ColumnStochasticMatrix& out) {
  const int V = dg.V();
  const int goal = copy == 1 ? dg.t : dg.s;
  int goal_slot = -1;
  for (int k = kernel.col_ptr[b]; k < kernel.col_ptr[b + 1]; ++k) {
    if (kernel.row_idx[k] == goal) {
      goal_slot = k;
      continue;
    }
    out.row_idx.push_back(copy == 1 ? kernel.row_idx[k] : V + kernel.row_idx[k]);
    out.val.push_back(kernel.val[k]);
  }
  if (goal_slot >= 0) {
    // Copy-1 mass entering t lands at idx(2,t) = V+t, past every copy-1 row;
    // copy-2 mass entering s lands at idx(1,s) = s, before every copy-2 row.
    if (copy == 1) {
      out.row_idx.push_back(V + dg.t);
      out.val.push_back(kernel.val[goal_slot]);
    } else {
      const std::size_t first = out.row_idx.size() - (kernel.col_ptr[b + 1] - kernel.col_ptr[b] - 1);
      out.row_idx.insert(out.row_idx.begin() + first, dg.s);
      out.val.insert(out.val.begin() + first, kernel.val[goal_slot]);
    }
  }
}

}  // namespace

ColumnStochasticMatrix assemble_pf(const DoubledGraph& dg, const ColumnStochasticMatrix& p1,
                                   const ColumnStochasticMatrix& p2) {
  const int V = dg.V();
  if (p1.n != V || p2.n != V) {
    throw DimensionMismatch("base kernels must be V x V");
  }
  ColumnStochasticMatrix pf;
  pf.n = 2 * V;
  pf.col_ptr.reserve(pf.n + 1);
  pf.col_ptr.push_back(0);
  for (int b = 0; b < V; ++b) {  // copy 1 moves by p2
    if (b != dg.t) append_column(dg, 1, b, p2, pf);
    pf.col_ptr.push_back(static_cast<int>(pf.row_idx.size()));
  }
  for (int b = 0; b < V; ++b) {  // copy 2 moves by p1
    if (b != dg.s) append_column(dg, 2, b, p1, pf);
    pf.col_ptr.push_back(static_cast<int>(pf.row_idx.size()));
  }
  return pf;
}

int pf_column(const DoubledGraph& dg, std::span<const double> w, double eps, int col,
              int* rows, double* vals) {
  const int V = dg.V();
  if (col == dg.removed1() || col == dg.removed2()) return 0;
  const int copy = col < V ? 1 : 2;
  const int b = copy == 1 ? col : col - V;
  const auto& nbrs = dg.base.adj[b];
  const int deg = static_cast<int>(nbrs.size());
  const int other_offset = copy == 1 ? V : 0;  // copy 1 follows w2, copy 2 follows w1

  double wmax = 0.0;
  for (int j : nbrs) wmax = std::max(wmax, w[other_offset + j]);
  const double threshold = wmax * (1.0 - kTieRelTol);
  int m = 0;
  for (int j : nbrs) {
    if (w[other_offset + j] >= threshold) ++m;
  }

  const double explore = eps / deg;
  const double exploit = (1.0 - eps) / m;
  const int goal = copy == 1 ? dg.t : dg.s;
  int count = 0;
  double goal_val = 0.0;
  bool has_goal = false;
  for (int j : nbrs) {
    const double p = explore + (w[other_offset + j] >= threshold ? exploit : 0.0);
    if (j == goal) {
      has_goal = true;
      goal_val = p;
      continue;
    }
    rows[count] = copy == 1 ? j : V + j;
    vals[count] = p;
    ++count;
  }
  if (has_goal) {
    if (copy == 1) {  // redirect row V+t sorts after every copy-1 row
      rows[count] = V + dg.t;
      vals[count] = goal_val;
      ++count;
    } else {  // redirect row s sorts before every copy-2 row
      for (int k = count; k > 0; --k) {
        rows[k] = rows[k - 1];
        vals[k] = vals[k - 1];
      }
      rows[0] = dg.s;
      vals[0] = goal_val;
      ++count;
    }
  }
  return count;
}

PfAssembler::PfAssembler(const DoubledGraph& dg) : dg_(&dg) {
  const int dim = dg.dim();
  csc_.n = dim;
  csc_.col_ptr.assign(dim + 1, 0);
  std::vector<int> rows(dg.base.V + 1);
  std::vector<double> vals(dg.base.V + 1);
  const std::vector<double> zero_w(dim, 0.0);
  for (int col = 0; col < dim; ++col) {
    const int count = pf_column(dg, zero_w, 1.0, col, rows.data(), vals.data());
    for (int k = 0; k < count; ++k) {
      csc_.row_idx.push_back(rows[k]);
      csc_.val.push_back(vals[k]);
    }
    csc_.col_ptr[col + 1] = static_cast<int>(csc_.row_idx.size());
  }
  csr_ = to_csr(csc_);
  csr_slot_ = csc_to_csr_slots(csc_, csr_);
}

void PfAssembler::update(std::span<const double> w, double eps) {
  const int dim = csc_.n;
#pragma omp parallel
  {
    std::vector<int> rows(dg_->base.V + 1);
    std::vector<double> vals(dg_->base.V + 1);
#pragma omp for schedule(static)
    for (int col = 0; col < dim; ++col) {
      const int count = pf_column(*dg_, w, eps, col, rows.data(), vals.data());
      const int base = csc_.col_ptr[col];
      for (int k = 0; k < count; ++k) csc_.val[base + k] = vals[k];
    }
#pragma omp for schedule(static)
    for (int k = 0; k < static_cast<int>(csr_slot_.size()); ++k) {
      csr_.val[csr_slot_[k]] = csc_.val[k];
    }
  }
}

}  // namespace forage
