#include <benchmark/benchmark.h>

#include "flrw/blowup_ode.hpp"
#include "flrw/bounds.hpp"
#include "flrw/kato.hpp"
#include "flrw/pde.hpp"

namespace {

void BM_Classify(benchmark::State& state) {
    const flrw::ModelParams m{2, 0.6, 1.2};
    double p = 1.01;
    for (auto _ : state) {
        benchmark::DoNotOptimize(flrw::classify(m, p));
        p = p > 3.99 ? 1.01 : p + 0.01;
    }
}
BENCHMARK(BM_Classify);

void BM_RegionMap(benchmark::State& state) {
    const auto preset = flrw::figure_preset(state.range(0) == 1 ? "fig1" : "fig2");
    for (auto _ : state) {
        auto map = flrw::build_map(preset);
        benchmark::DoNotOptimize(map.cells.data());
        state.counters["cells"] = static_cast<double>(map.cells.size());
    }
}
BENCHMARK(BM_RegionMap)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_KatoSequences(benchmark::State& state) {
    flrw::KatoCriticalParams kc;
    kc.mu = 2.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(flrw::iterate_sequences(kc, static_cast<int>(state.range(0))));
    }
}
BENCHMARK(BM_KatoSequences)->Arg(30)->Arg(500);

void BM_OdeIntegrate(benchmark::State& state) {
    const auto pre = flrw::ode_preset(state.range(0) == 0 ? "heatlike-n2" : "critical-n2");
    auto cfg = pre.config;
    cfg.eps = pre.eps_grid.front();
    for (auto _ : state) {
        const auto res = flrw::integrate(cfg);
        state.counters["steps"] = static_cast<double>(res.steps);
    }
}
BENCHMARK(BM_OdeIntegrate)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

void BM_PdeStep(benchmark::State& state) {
    auto cfg = flrw::pde_preset("heatlike-n2");
    cfg.dr = 1.0 / static_cast<double>(state.range(0));
    for (auto _ : state) {
        state.PauseTiming();
        auto s = flrw::initial_state(cfg);
        state.ResumeTiming();
        for (int k = 0; k < 100; ++k) flrw::step(s, cfg);
        benchmark::DoNotOptimize(s.u.data());
    }
    state.SetItemsProcessed(state.iterations() * 100);
}
BENCHMARK(BM_PdeStep)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_PdeRun(benchmark::State& state) {
    const auto cfg = flrw::pde_preset("heatlike-n2");
    for (auto _ : state) {
        benchmark::DoNotOptimize(flrw::run(cfg).T_num);
    }
}
BENCHMARK(BM_PdeRun)->Unit(benchmark::kMillisecond)->Iterations(3);

}  // namespace

BENCHMARK_MAIN();
