#pragma once

#include <vector>

namespace forage {

/// Sparse column-stochastic matrix in CSC layout. Row indices are ascending
/// within each column. Columns of removed vertices are empty; every other
/// column sums to 1 within 1e-12.
struct ColumnStochasticMatrix {
  int n = 0;
  std::vector<int> col_ptr;  // size n+1
  std::vector<int> row_idx;
  std::vector<double> val;

  int nnz() const { return static_cast<int>(row_idx.size()); }
  double column_sum(int c) const;
};

/// Row-major companion used for the matrix-vector product; column indices are
/// ascending within each row, which fixes the summation order.
struct CsrMatrix {
  int n = 0;
  std::vector<int> row_ptr;
  std::vector<int> col_idx;
  std::vector<double> val;
};

CsrMatrix to_csr(const ColumnStochasticMatrix& m);

/// Slot map: csr.val[map[k]] corresponds to csc.val[k]. Lets a fixed-pattern
/// operator refresh CSR values without rebuilding the structure.
std::vector<int> csc_to_csr_slots(const ColumnStochasticMatrix& m, const CsrMatrix& r);

/// out = P x, parallel over rows. Each row accumulates in ascending column
/// order, so results are identical for any thread count.
void matvec(const CsrMatrix& p, const std::vector<double>& x, std::vector<double>& out);

namespace ref {
/// Serial reference used by tests and the benchmark.
void matvec(const CsrMatrix& p, const std::vector<double>& x, std::vector<double>& out);
}  // namespace ref

}  // namespace forage
