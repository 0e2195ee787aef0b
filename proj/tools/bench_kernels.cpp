// Microbenchmarks comparing the OpenMP kernels against their serial
// references, plus whole-step costs of both engines on the 20x20 lattice.
#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "forage/doubled.hpp"
#include "forage/kernels.hpp"
#include "forage/matrix.hpp"
#include "forage/mean_field.hpp"
#include "forage/oracle.hpp"
#include "forage/swarm.hpp"

using namespace forage;

namespace {

DoubledGraph fixture() {
  const Graph g = build_triangular_lattice(20, 20);
  return build_doubled(g, 0, g.V - 1);
}

CsrMatrix fixture_operator(const DoubledGraph& dg) {
  PfAssembler pf(dg);
  pf.update(closed_form_w_inf(dg, 5.0, 0.9), 0.5);
  return pf.csr();
}

std::vector<double> random_vector(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> v(dim);
  double total = 0.0;
  for (double& x : v) total += (x = unif(rng));
  for (double& x : v) x /= total;
  return v;
}

void BM_matvec_parallel(benchmark::State& state) {
  const DoubledGraph dg = fixture();
  const CsrMatrix pf = fixture_operator(dg);
  const std::vector<double> x = random_vector(dg.dim(), 1);
  std::vector<double> out(dg.dim());
  for (auto _ : state) {
    matvec(pf, x, out);
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_matvec_serial(benchmark::State& state) {
  const DoubledGraph dg = fixture();
  const CsrMatrix pf = fixture_operator(dg);
  const std::vector<double> x = random_vector(dg.dim(), 1);
  std::vector<double> out(dg.dim());
  for (auto _ : state) {
    ref::matvec(pf, x, out);
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_weight_step_parallel(benchmark::State& state) {
  const DoubledGraph dg = fixture();
  std::vector<double> w = closed_form_w_inf(dg, 5.0, 0.9);
  const std::vector<double> diag = reward_diagonal(dg, w, 5.0, 0.9);
  std::vector<char> occ(dg.dim(), 1);
  occ[dg.removed1()] = 0;
  occ[dg.removed2()] = 0;
  for (auto _ : state) {
    weight_step(w, occ, diag, 0.005);
    benchmark::DoNotOptimize(w.data());
  }
}

void BM_weight_step_serial(benchmark::State& state) {
  const DoubledGraph dg = fixture();
  std::vector<double> w = closed_form_w_inf(dg, 5.0, 0.9);
  const std::vector<double> diag = reward_diagonal(dg, w, 5.0, 0.9);
  std::vector<char> occ(dg.dim(), 1);
  occ[dg.removed1()] = 0;
  occ[dg.removed2()] = 0;
  for (auto _ : state) {
    ref::weight_step(w, occ, diag, 0.005);
    benchmark::DoNotOptimize(w.data());
  }
}

void BM_reward_diagonal(benchmark::State& state) {
  const DoubledGraph dg = fixture();
  const std::vector<double> w = closed_form_w_inf(dg, 5.0, 0.9);
  for (auto _ : state) {
    std::vector<double> diag = reward_diagonal(dg, w, 5.0, 0.9);
    benchmark::DoNotOptimize(diag.data());
  }
}

void BM_pf_update(benchmark::State& state) {
  const DoubledGraph dg = fixture();
  const std::vector<double> w = closed_form_w_inf(dg, 5.0, 0.9);
  PfAssembler pf(dg);
  for (auto _ : state) {
    pf.update(w, 0.5);
    benchmark::DoNotOptimize(pf.csr().val.data());
  }
}

void BM_mean_field_step(benchmark::State& state) {
  const DoubledGraph dg = fixture();
  MeanFieldEngine engine(dg, DynamicsConfig{});
  for (auto _ : state) {
    engine.step();
    benchmark::DoNotOptimize(engine.state().y.data());
  }
}

void BM_swarm_step(benchmark::State& state) {
  const DoubledGraph dg = fixture();
  const DynamicsConfig cfg;
  SwarmState st = init_swarm(dg, state.range(0), 1);
  for (auto _ : state) {
    swarm_step(dg, st, cfg);
    benchmark::DoNotOptimize(st.positions.data());
  }
}

}  // namespace

BENCHMARK(BM_matvec_parallel);
BENCHMARK(BM_matvec_serial);
BENCHMARK(BM_weight_step_parallel);
BENCHMARK(BM_weight_step_serial);
BENCHMARK(BM_reward_diagonal);
BENCHMARK(BM_pf_update);
BENCHMARK(BM_mean_field_step);
BENCHMARK(BM_swarm_step)->Arg(600)->Arg(10000);

BENCHMARK_MAIN();
