#pragma once

#include <span>
#include <vector>

#include "forage/graph.hpp"
#include "forage/matrix.hpp"

namespace forage {

/// Two interconnected copies of the base graph: copy 1 holds agents seeking T,
/// copy 2 agents returning to S. Mass entering t in copy 1 lands at t in copy 2
/// and vice versa at s, so index(1,t) and index(2,s) never carry mass; both are
/// kept in the 2V index space with zeroed rows/columns.
struct DoubledGraph {
  Graph base;
  int s = 0;
  int t = 0;
  int k = 0;  // delta(s,t) in the base graph

  int V() const { return base.V; }
  int dim() const { return 2 * base.V; }
  int idx(int copy, int v) const { return copy == 1 ? v : base.V + v; }
  int removed1() const { return t; }            // idx(1,t)
  int removed2() const { return base.V + s; }   // idx(2,s)
  bool active(int i) const { return i != removed1() && i != removed2(); }
};

/// Validates the base graph (connected, odd cycle), Assumption-2 goal
/// separation delta(s,t) > 1 (AdjacentGoals otherwise), and that removing
/// either goal leaves the rest connected, which makes the doubled system
/// strongly connected for any epsilon > 0 (InvalidGraph otherwise).
DoubledGraph build_doubled(const Graph& g, int s, int t);

/// Block operator P^f from two V x V base kernels: copy-1 columns move per p2,
/// copy-2 columns per p1, with goal-entering mass redirected across copies.
/// Throws DimensionMismatch unless p1.n == p2.n == V.
ColumnStochasticMatrix assemble_pf(const DoubledGraph& dg,
                                   const ColumnStochasticMatrix& p1,
                                   const ColumnStochasticMatrix& p2);

/// Writes the epsilon-greedy P^f column for doubled index `col` into
/// rows/vals (ascending rows). w is the doubled weight vector; copy-1 columns
/// read copy-2 weights and vice versa. Buffers must hold at least the base
/// degree of the column's vertex. Returns the entry count (0 for removed).
int pf_column(const DoubledGraph& dg, std::span<const double> w, double eps,
              int col, int* rows, double* vals);

/// Fixed-pattern epsilon-greedy P^f: the sparsity pattern (all doubled edges)
/// is built once, update() only rewrites values. Keeps CSC (column access for
/// sampling/checks) and CSR (row-parallel matvec) views in sync.
class PfAssembler {
 public:
  explicit PfAssembler(const DoubledGraph& dg);

  void update(std::span<const double> w, double eps);

  const ColumnStochasticMatrix& csc() const { return csc_; }
  const CsrMatrix& csr() const { return csr_; }
  const DoubledGraph& graph() const { return *dg_; }

 private:
  const DoubledGraph* dg_;
  ColumnStochasticMatrix csc_;
  CsrMatrix csr_;
  std::vector<int> csr_slot_;
};

}  // namespace forage
