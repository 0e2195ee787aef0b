#include <doctest.h>

#include <random>
#include <vector>

#include "forage/kernels.hpp"
#include "forage/matrix.hpp"

using namespace forage;

namespace {

// Random sparse column-stochastic matrix with ascending row indices.
ColumnStochasticMatrix random_stochastic(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> fill(1, n);
  std::uniform_real_distribution<double> unif(0.01, 1.0);
  ColumnStochasticMatrix m;
  m.n = n;
  m.col_ptr.assign(n + 1, 0);
  for (int c = 0; c < n; ++c) {
    const int entries = fill(rng);
    std::vector<char> take(n, 0);
    for (int k = 0; k < entries; ++k) take[fill(rng) - 1] = 1;
    std::vector<double> weights;
    for (int r = 0; r < n; ++r) {
      if (take[r]) {
        m.row_idx.push_back(r);
        weights.push_back(unif(rng));
      }
    }
    double total = 0.0;
    for (double w : weights) total += w;
    for (double w : weights) m.val.push_back(w / total);
    m.col_ptr[c + 1] = static_cast<int>(m.row_idx.size());
  }
  return m;
}

}  // namespace

TEST_CASE("to_csr preserves every entry") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const ColumnStochasticMatrix m = random_stochastic(rng, 1 + trial % 17);
    const CsrMatrix r = to_csr(m);
    REQUIRE(r.n == m.n);
    REQUIRE(static_cast<int>(r.col_idx.size()) == m.nnz());
    // Dense reconstruction from both layouts must agree exactly.
    std::vector<std::vector<double>> dense(m.n, std::vector<double>(m.n, 0.0));
    for (int c = 0; c < m.n; ++c) {
      for (int k = m.col_ptr[c]; k < m.col_ptr[c + 1]; ++k) {
        dense[m.row_idx[k]][c] = m.val[k];
      }
    }
    for (int row = 0; row < r.n; ++row) {
      int prev_col = -1;
      for (int k = r.row_ptr[row]; k < r.row_ptr[row + 1]; ++k) {
        REQUIRE(r.col_idx[k] > prev_col);  // ascending columns per row
        prev_col = r.col_idx[k];
        REQUIRE(r.val[k] == dense[row][r.col_idx[k]]);
        dense[row][r.col_idx[k]] = 0.0;
      }
    }
    for (const auto& row : dense) {
      for (double v : row) REQUIRE(v == 0.0);
    }
  }
}

TEST_CASE("csc_to_csr_slots maps values one to one") {
  std::mt19937_64 rng(11);
  ColumnStochasticMatrix m = random_stochastic(rng, 13);
  const CsrMatrix r = to_csr(m);
  const std::vector<int> slots = csc_to_csr_slots(m, r);
  REQUIRE(slots.size() == m.val.size());
  for (std::size_t k = 0; k < slots.size(); ++k) {
    CHECK(r.val[slots[k]] == m.val[k]);
  }
  // Refreshing values through the slot map reproduces a fresh conversion.
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (double& v : m.val) v = unif(rng);
  CsrMatrix refreshed = r;
  for (std::size_t k = 0; k < slots.size(); ++k) refreshed.val[slots[k]] = m.val[k];
  const CsrMatrix rebuilt = to_csr(m);
  CHECK(refreshed.val == rebuilt.val);
}

TEST_CASE("column_sum adds the stored entries") {
  ColumnStochasticMatrix m;
  m.n = 3;
  m.col_ptr = {0, 2, 2, 3};
  m.row_idx = {0, 2, 1};
  m.val = {0.25, 0.75, 1.0};
  CHECK(m.column_sum(0) == doctest::Approx(1.0));
  CHECK(m.column_sum(1) == 0.0);  // removed-vertex column stays empty
  CHECK(m.column_sum(2) == 1.0);
  CHECK(m.nnz() == 3);
}

TEST_CASE("parallel matvec is bit-identical to the serial reference") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 1 + trial * 7 % 40;
    const ColumnStochasticMatrix m = random_stochastic(rng, n);
    const CsrMatrix r = to_csr(m);
    std::vector<double> x(n);
    for (double& v : x) v = unif(rng);
    std::vector<double> out_par, out_ref;
    matvec(r, x, out_par);
    ref::matvec(r, x, out_ref);
    REQUIRE(out_par.size() == x.size());
    for (int i = 0; i < n; ++i) REQUIRE(out_par[i] == out_ref[i]);
  }
}

TEST_CASE("matvec preserves total mass of a distribution") {
  std::mt19937_64 rng(31);
  const ColumnStochasticMatrix m = random_stochastic(rng, 29);
  const CsrMatrix r = to_csr(m);
  std::vector<double> y(29, 1.0 / 29.0);
  std::vector<double> out;
  for (int step = 0; step < 50; ++step) {
    matvec(r, y, out);
    y.swap(out);
  }
  double total = 0.0;
  for (double v : y) total += v;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}
