#include <benchmark/benchmark.h>

#include <random>

#include "robustcut/functionals.hpp"
#include "robustcut/instances.hpp"
#include "robustcut/morphology.hpp"

using namespace robustcut;

namespace {

CellMask noise_mask(const GridGeometry& g) {
    std::mt19937_64 rng(7);
    CellMask m(g, false);
    for (std::size_t c = 0; c < m.size(); ++c) m.set(c, rng() & 1u);
    return m;
}

}  // namespace

static void BM_AdversarialRisk(benchmark::State& state) {
    const auto gm = four_squares(static_cast<std::size_t>(state.range(0)));
    const auto s = ball_stencil(gm.geometry(), 4.0 * gm.geometry().spacing()[0], Metric::l2());
    const auto mask = noise_mask(gm.geometry());
    for (auto _ : state) benchmark::DoNotOptimize(adversarial_risk_grid(mask, gm, s));
}
BENCHMARK(BM_AdversarialRisk)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_MorphologicalRisk(benchmark::State& state) {
    const auto gm = four_squares(static_cast<std::size_t>(state.range(0)));
    const auto s = ball_stencil(gm.geometry(), 4.0 * gm.geometry().spacing()[0], Metric::l2());
    const auto mask = noise_mask(gm.geometry());
    for (auto _ : state) benchmark::DoNotOptimize(morphological_risk(mask, gm, s));
}
BENCHMARK(BM_MorphologicalRisk)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_Closing(benchmark::State& state) {
    const auto gm = four_squares(static_cast<std::size_t>(state.range(0)));
    const auto s = ball_stencil(gm.geometry(), 4.0 * gm.geometry().spacing()[0], Metric::l2());
    const auto mask = noise_mask(gm.geometry());
    for (auto _ : state) benchmark::DoNotOptimize(closing(mask, s).count());
}
BENCHMARK(BM_Closing)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

static void BM_Coarea(benchmark::State& state) {
    const auto gm = four_squares(64);
    const auto s = ball_stencil(gm.geometry(), 4.0 * gm.geometry().spacing()[0], Metric::l2());
    std::mt19937_64 rng(9);
    std::vector<double> v(gm.cell_count());
    for (auto& x : v) x = static_cast<double>(rng() % static_cast<unsigned>(state.range(0))) / 8.0;
    const ScalarField u(gm.geometry(), v);
    for (auto _ : state) benchmark::DoNotOptimize(coarea_tv(u, gm, s));
}
BENCHMARK(BM_Coarea)->Arg(2)->Arg(8)->Unit(benchmark::kMillisecond);
