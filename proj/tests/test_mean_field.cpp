#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "fixtures.hpp"
#include "forage/doubled.hpp"
#include "forage/kernels.hpp"
#include "forage/mean_field.hpp"

using namespace forage;

namespace {

DoubledGraph lattice33() { return build_doubled(build_triangular_lattice(3, 3), 0, 8); }

DynamicsConfig table_defaults() { return DynamicsConfig{}; }

}  // namespace

TEST_CASE("mean-field mass is conserved and stays off removed vertices") {
  for (const DoubledGraph& dg : {lattice33(), build_doubled(fixtures::bowtie(), 0, 4)}) {
    MeanFieldEngine engine(dg, table_defaults());
    for (int t = 0; t < 10000; ++t) {
      engine.step();
      const std::vector<double>& y = engine.state().y;
      const double total = std::accumulate(y.begin(), y.end(), 0.0);
      REQUIRE(std::abs(total - 1.0) <= 1e-12);
      REQUIRE(y[dg.removed1()] == 0.0);
      REQUIRE(y[dg.removed2()] == 0.0);
      for (double v : y) REQUIRE(v >= 0.0);
    }
  }
}

TEST_CASE("eps = 1 reduces the occupancy dynamics to a fixed matrix power") {
  const DoubledGraph dg = lattice33();
  DynamicsConfig cfg = table_defaults();
  cfg.eps = 1.0;  // kernel no longer depends on w

  MeanFieldEngine engine(dg, cfg);
  for (int t = 0; t < 25; ++t) engine.step();

  const ColumnStochasticMatrix uni = uniform_walk(dg.base);
  const CsrMatrix pf = to_csr(assemble_pf(dg, uni, uni));
  std::vector<double> y(dg.dim(), 0.0), next(dg.dim(), 0.0);
  y[dg.idx(1, 0)] = 1.0;
  for (int t = 0; t < 25; ++t) {
    ref::matvec(pf, y, next);
    y.swap(next);
  }
  REQUIRE(engine.state().y == y);
}

TEST_CASE("first step from reset matches the hand computation") {
  const DoubledGraph dg = lattice33();
  const DynamicsConfig cfg = table_defaults();
  MeanFieldEngine engine(dg, cfg);
  engine.step();

  const MeanFieldState& st = engine.state();
  CHECK(st.t == 1);

  // Unit mass at s spreads uniformly over its copy-1 neighbors {1,3}.
  for (int i = 0; i < dg.dim(); ++i) {
    const double want = (i == dg.idx(1, 1) || i == dg.idx(1, 3)) ? 0.5 : 0.0;
    CHECK(st.y[i] == want);
  }

  // Only s was occupied; with w(0)=0 its reward entry is 1+r.
  for (int i = 0; i < dg.dim(); ++i) {
    const double want = i == dg.idx(1, 0) ? cfg.rho * (1.0 + cfg.r) : 0.0;
    CHECK(st.w[i] == want);
  }
}

TEST_CASE("converged runs are stationary under further steps") {
  const DoubledGraph dg = lattice33();
  const double tol = 1e-10;
  MeanFieldEngine engine(dg, table_defaults());
  const ConvergenceReport report = engine.run(200000, tol);
  REQUIRE(report.converged);
  REQUIRE(report.t_stop > 1000);
  REQUIRE(report.y_residual < tol);
  REQUIRE(report.w_residual < tol);

  engine.step();
  CHECK(engine.last_y_residual() < 10.0 * tol);
  CHECK(engine.last_w_residual() < 10.0 * tol);
}

TEST_CASE("two engines produce bitwise identical trajectories") {
  const DoubledGraph dg = lattice33();
  MeanFieldEngine a(dg, table_defaults());
  MeanFieldEngine b(dg, table_defaults());
  const ConvergenceReport ra = a.run(5000, 1e-10, 100);
  const ConvergenceReport rb = b.run(5000, 1e-10, 100);
  REQUIRE(a.state().y == b.state().y);
  REQUIRE(a.state().w == b.state().w);
  REQUIRE(ra.t_stop == rb.t_stop);
  REQUIRE(ra.samples.size() == rb.samples.size());
  for (std::size_t i = 0; i < ra.samples.size(); ++i) {
    REQUIRE(ra.samples[i].t == rb.samples[i].t);
    REQUIRE(ra.samples[i].y_residual == rb.samples[i].y_residual);
    REQUIRE(ra.samples[i].w_residual == rb.samples[i].w_residual);
  }
}

TEST_CASE("a loose tolerance converges on the first step") {
  const DoubledGraph dg = lattice33();
  MeanFieldEngine engine(dg, table_defaults());
  const ConvergenceReport report = engine.run(100, 10.0);
  CHECK(report.converged);
  CHECK(report.t_stop == 1);
}

TEST_CASE("samples land on stride multiples, snapshots add start and end") {
  const DoubledGraph dg = lattice33();
  MeanFieldEngine engine(dg, table_defaults());
  std::vector<long long> snap_times;
  const ConvergenceReport report =
      engine.run(35, 0.0, 10, [&](const MeanFieldState& st) { snap_times.push_back(st.t); });
  CHECK_FALSE(report.converged);
  CHECK(report.t_stop == 35);
  REQUIRE(report.samples.size() == 3);
  CHECK(report.samples[0].t == 10);
  CHECK(report.samples[1].t == 20);
  CHECK(report.samples[2].t == 30);
  CHECK(snap_times == std::vector<long long>{0, 10, 20, 30, 35});

  // Without a stride there are no samples, only the final snapshot.
  engine.reset();
  snap_times.clear();
  const ConvergenceReport bare =
      engine.run(7, 0.0, 0, [&](const MeanFieldState& st) { snap_times.push_back(st.t); });
  CHECK(bare.samples.empty());
  CHECK(snap_times == std::vector<long long>{7});
}

TEST_CASE("windowed residual averaging still reaches the fixed point") {
  const DoubledGraph dg = lattice33();
  DynamicsConfig cfg = table_defaults();
  cfg.window = 25;
  MeanFieldEngine engine(dg, cfg);
  const ConvergenceReport report = engine.run(200000, 1e-8);
  CHECK(report.converged);
  CHECK(report.y_residual < 1e-7);
}
