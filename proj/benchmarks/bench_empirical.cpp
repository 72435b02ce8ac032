#include <benchmark/benchmark.h>

#include "robustcut/exact_empirical.hpp"
#include "robustcut/instances.hpp"
#include "robustcut/neighbors.hpp"

using namespace robustcut;

static void BM_ConflictGraph(benchmark::State& state) {
    const auto ds = two_clusters(static_cast<std::size_t>(state.range(0)), 1);
    for (auto _ : state) benchmark::DoNotOptimize(build_conflict_graph(ds, 0.1, Metric::l2()).edges.size());
}
BENCHMARK(BM_ConflictGraph)->Arg(1000)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

static void BM_PairsAllPairs(benchmark::State& state) {
    const auto ds = two_clusters(static_cast<std::size_t>(state.range(0)), 2);
    for (auto _ : state) benchmark::DoNotOptimize(pairs_within_all_pairs(ds, 0.2, Metric::l2()).size());
}
BENCHMARK(BM_PairsAllPairs)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

static void BM_PairsHashed(benchmark::State& state) {
    const auto ds = two_clusters(static_cast<std::size_t>(state.range(0)), 2);
    for (auto _ : state) benchmark::DoNotOptimize(pairs_within_hashed(ds, 0.2, Metric::l2()).size());
}
BENCHMARK(BM_PairsHashed)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

static void BM_OptimalRisk(benchmark::State& state) {
    const auto ds = two_clusters(static_cast<std::size_t>(state.range(0)), 3);
    const auto graph = build_conflict_graph(ds, 0.1, Metric::l2());
    for (auto _ : state) benchmark::DoNotOptimize(optimal_risk(ds, graph).risk);
    state.counters["edges"] = static_cast<double>(graph.edges.size());
}
BENCHMARK(BM_OptimalRisk)->Arg(1000)->Arg(10000)->Arg(50000)->Unit(benchmark::kMillisecond);
