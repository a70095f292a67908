#include <benchmark/benchmark.h>

#include "modgraph/count_cache.hpp"
#include "modgraph/decomposition.hpp"
#include "modgraph/prime_class.hpp"
#include "modgraph/sampler.hpp"
#include "modgraph/tree_series.hpp"

namespace {

using namespace modgraph;

PrimeClass class_by_index(std::int64_t i) {
  switch (i) {
    case 0: return PrimeClass::empty();
    case 1: return PrimeClass::finite({LabeledGraph::path(4)});
    default: return PrimeClass::paths();
  }
}

void bm_solve_tree_series(benchmark::State& state) {
  const PrimeClass cls = class_by_index(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(solve_tree_series(cls, static_cast<std::size_t>(state.range(1))));
}
BENCHMARK(bm_solve_tree_series)->ArgsProduct({{0, 1, 2}, {50, 100}})->Unit(benchmark::kMillisecond);

void bm_count_cache(benchmark::State& state) {
  const PrimeClass cls = class_by_index(state.range(0));
  for (auto _ : state) {
    CountCache cache(cls, static_cast<std::size_t>(state.range(1)));
    benchmark::DoNotOptimize(cache.trees()[cache.order()]);
  }
}
BENCHMARK(bm_count_cache)->ArgsProduct({{0, 1, 2}, {200, 500}})->Unit(benchmark::kMillisecond);

void bm_sample_tree(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(1));
  const CountCache cache(class_by_index(state.range(0)), n);
  RngStream rng(1, 1);
  for (auto _ : state) benchmark::DoNotOptimize(sample_uniform_tree(cache, n, rng));
}
BENCHMARK(bm_sample_tree)->ArgsProduct({{0, 1, 2}, {100, 1000}})->Unit(benchmark::kMicrosecond);

void bm_modular_decomposition(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const CountCache cache(PrimeClass::paths(), n);
  RngStream rng(2, 2);
  const LabeledGraph g = sample_uniform_graph(cache, n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(modular_decomposition(g));
}
BENCHMARK(bm_modular_decomposition)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
