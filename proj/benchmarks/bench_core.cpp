#include <benchmark/benchmark.h>

#include <kahlerq/dynamics.hpp>
#include <kahlerq/ergodicity.hpp>
#include <kahlerq/operators.hpp>
#include <kahlerq/rng.hpp>
#include <kahlerq/sampling.hpp>

using namespace kahlerq;

namespace {

void bm_gamma_lift(benchmark::State& state) {
  const Index n = state.range(0);
  Rng rng(1);
  const ComplexOperator l = from_complex(random_cmat(rng, n));
  for (auto _ : state) {
    benchmark::DoNotOptimize(gamma_lift(l));
  }
  state.SetComplexityN(n);
}
BENCHMARK(bm_gamma_lift)->RangeMultiplier(4)->Range(8, 512)->Complexity();

void bm_apply_lifted(benchmark::State& state) {
  const Index n = state.range(0);
  Rng rng(2);
  const KahlerOperator m = gamma_lift(from_complex(random_cmat(rng, n)));
  const KahlerState u = random_state(rng, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(m.apply(u));
  }
}
BENCHMARK(bm_apply_lifted)->RangeMultiplier(4)->Range(8, 512);

void bm_expectation(benchmark::State& state) {
  const Index n = state.range(0);
  Rng rng(3);
  const KahlerOperator m = gamma_lift(from_complex(random_hermitian(rng, n)));
  const KahlerState u = random_state(rng, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(expectation(m, u));
  }
}
BENCHMARK(bm_expectation)->RangeMultiplier(4)->Range(8, 512);

void bm_midpoint_step(benchmark::State& state) {
  const Index n = state.range(0);
  Rng rng(4);
  const HamiltonianSplit hs = split_hamiltonian(from_complex(random_hermitian(rng, n)));
  const KahlerState u0 = random_state(rng, n);
  const int steps = 64;
  for (auto _ : state) {
    benchmark::DoNotOptimize(evolve_midpoint(hs, u0, 1.0, steps, steps));
  }
  state.SetItemsProcessed(state.iterations() * steps);
}
BENCHMARK(bm_midpoint_step)->RangeMultiplier(2)->Range(8, 128);

void bm_exact_propagator(benchmark::State& state) {
  const Index n = state.range(0);
  Rng rng(5);
  const ComplexOperator h = from_complex(random_hermitian(rng, n));
  for (auto _ : state) {
    benchmark::DoNotOptimize(exact_propagator(h, 1.0));
  }
}
BENCHMARK(bm_exact_propagator)->RangeMultiplier(2)->Range(8, 128);

void bm_torus_average(benchmark::State& state) {
  const int grid = static_cast<int>(state.range(0));
  Observable pair;
  pair.terms.push_back({1.0, {2, 2}, {0, 0}});
  const ObservableFn f = [&pair](const KahlerState& s) { return pair(s); };
  const Vec actions = Vec::Ones(2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(torus_average(f, actions, grid));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(grid) * grid);
}
BENCHMARK(bm_torus_average)->RangeMultiplier(2)->Range(16, 128);

}  // namespace

BENCHMARK_MAIN();
