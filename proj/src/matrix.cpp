#include "forage/matrix.hpp"

namespace forage {

double ColumnStochasticMatrix::column_sum(int c) const {
  double total = 0.0;
  for (int k = col_ptr[c]; k < col_ptr[c + 1]; ++k) total += val[k];
  return total;
}

CsrMatrix to_csr(const ColumnStochasticMatrix& m) {
  CsrMatrix r;
  r.n = m.n;
  r.row_ptr.assign(m.n + 1, 0);
  for (int row : m.row_idx) ++r.row_ptr[row + 1];
  for (int i = 0; i < m.n; ++i) r.row_ptr[i + 1] += r.row_ptr[i];
  r.col_idx.resize(m.row_idx.size());
  r.val.resize(m.val.size());
  std::vector<int> cursor(r.row_ptr.begin(), r.row_ptr.end() - 1);
  // Column-major traversal emits ascending columns within each row.
  for (int c = 0; c < m.n; ++c) {
    for (int k = m.col_ptr[c]; k < m.col_ptr[c + 1]; ++k) {
      const int slot = cursor[m.row_idx[k]]++;
      r.col_idx[slot] = c;
      r.val[slot] = m.val[k];
    }
  }
  return r;
}

std::vector<int> csc_to_csr_slots(const ColumnStochasticMatrix& m, const CsrMatrix& r) {
  std::vector<int> cursor(r.row_ptr.begin(), r.row_ptr.end() - 1);
  std::vector<int> slots(m.row_idx.size());
  for (int c = 0; c < m.n; ++c) {
    for (int k = m.col_ptr[c]; k < m.col_ptr[c + 1]; ++k) {
      slots[k] = cursor[m.row_idx[k]]++;
    }
  }
  return slots;
}

void matvec(const CsrMatrix& p, const std::vector<double>& x, std::vector<double>& out) {
  out.resize(p.n);
#pragma omp parallel for schedule(static)
  for (int row = 0; row < p.n; ++row) {
    double acc = 0.0;
    for (int k = p.row_ptr[row]; k < p.row_ptr[row + 1]; ++k) {
      acc += p.val[k] * x[p.col_idx[k]];
    }
    out[row] = acc;
  }
}

namespace ref {

void matvec(const CsrMatrix& p, const std::vector<double>& x, std::vector<double>& out) {
  out.resize(p.n);
  for (int row = 0; row < p.n; ++row) {
    double acc = 0.0;
    for (int k = p.row_ptr[row]; k < p.row_ptr[row + 1]; ++k) {
      acc += p.val[k] * x[p.col_idx[k]];
    }
    out[row] = acc;
  }
}

}  // namespace ref
}  // namespace forage
