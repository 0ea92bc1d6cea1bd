#include <benchmark/benchmark.h>

#include "earreg/ear_decomposition.hpp"
#include "earreg/generators.hpp"
#include "earreg/hilbert_oracle.hpp"
#include "earreg/regularity.hpp"

using namespace earreg;

namespace {

GeneratedInstance instance(std::size_t ears) {
  GeneratorConfig cfg;
  cfg.ear_count = ears;
  cfg.max_vertices = 16;
  for (cfg.seed = 0;; ++cfg.seed) {
    try {
      return generate_weak_nested_bipartite(cfg);
    } catch (const GeneratorError&) {
    }
  }
}

void BM_DegreeStep(benchmark::State& state) {
  const Graph g = generate_taino_sun(4);
  const FieldOrder q(static_cast<std::uint64_t>(state.range(0)));
  const ResidueCodec codec(g, q);
  StateSet frontier{0};
  for (int d = 0; d < 3; ++d) {
    frontier = degree_step(frontier, codec);
  }
  const auto workers = static_cast<unsigned>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(degree_step(frontier, codec, workers));
  }
  state.counters["states"] = static_cast<double>(frontier.size());
}
BENCHMARK(BM_DegreeStep)->Args({3, 1})->Args({4, 1})->Args({4, 4})->Unit(benchmark::kMicrosecond);

void BM_HilbertProfile(benchmark::State& state) {
  const Graph g = generate_taino_sun(static_cast<std::size_t>(state.range(0)));
  const FieldOrder q(static_cast<std::uint64_t>(state.range(1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(hilbert_profile(g, q));
  }
}
BENCHMARK(BM_HilbertProfile)->Args({2, 3})->Args({2, 5})->Args({4, 3})->Unit(benchmark::kMillisecond);

void BM_WeakNestedSearch(benchmark::State& state) {
  const auto inst = instance(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(find_weak_nested(inst.graph));
  }
  state.counters["vertices"] = static_cast<double>(inst.graph.vertex_count());
}
BENCHMARK(BM_WeakNestedSearch)->Arg(3)->Arg(6)->Arg(9)->Unit(benchmark::kMicrosecond);

void BM_Peel(benchmark::State& state) {
  const auto inst = instance(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(reg_peel(inst.graph, inst.decomposition, FieldOrder(3)));
  }
}
BENCHMARK(BM_Peel)->Arg(3)->Arg(9)->Unit(benchmark::kMicrosecond);

void BM_Bounds(benchmark::State& state) {
  const Graph g = generate_taino_sun(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(reg_bounds(g, FieldOrder(3)));
  }
}
BENCHMARK(BM_Bounds)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
