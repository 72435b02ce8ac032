#include <benchmark/benchmark.h>

#include "robustcut/graphcut.hpp"
#include "robustcut/instances.hpp"

using namespace robustcut;

// Four squares at eps = 4 cells, so the stencil grows with the resolution.
static void BM_SolveFourSquares(benchmark::State& state) {
    const auto cells = static_cast<std::size_t>(state.range(0));
    const auto gm = four_squares(cells);
    const auto s = ball_stencil(gm.geometry(), 4.0 * gm.geometry().spacing()[0], Metric::l2());
    for (auto _ : state) benchmark::DoNotOptimize(solve_grid(gm, s).flow_value);
    state.counters["cells"] = static_cast<double>(gm.cell_count());
}
BENCHMARK(BM_SolveFourSquares)->Arg(16)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

static void BM_SolveByRadius(benchmark::State& state) {
    const auto gm = four_squares(64);
    const double h = gm.geometry().spacing()[0];
    const auto s = ball_stencil(gm.geometry(), static_cast<double>(state.range(0)) * h, Metric::l2());
    for (auto _ : state) benchmark::DoNotOptimize(solve_grid(gm, s).flow_value);
    state.counters["stencil"] = static_cast<double>(s.size());
}
BENCHMARK(BM_SolveByRadius)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_AssembleEnergy(benchmark::State& state) {
    const auto gm = four_squares(static_cast<std::size_t>(state.range(0)));
    const auto s = ball_stencil(gm.geometry(), 4.0 * gm.geometry().spacing()[0], Metric::l2());
    for (auto _ : state) benchmark::DoNotOptimize(assemble_energy(gm, s).clause_count());
}
BENCHMARK(BM_AssembleEnergy)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);
