// Serial reference versus OpenMP sweep on a small figure 6 style grid.

#include "wpt/experiments.hpp"

#include <benchmark/benchmark.h>

namespace {

wpt::SweepSpec grid(int n)
{
    wpt::Figure6Config fig;
    fig.kappa_count = n;
    fig.gamma_count = n;
    wpt::IntegratorConfig cfg;
    cfg.sample_count = 500;
    return wpt::figure6_spec(1e-5, fig, cfg);
}

void BM_SweepSerial(benchmark::State& state)
{
    const auto spec = grid(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(wpt::run_sweep_serial(spec));
    state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}

void BM_SweepParallel(benchmark::State& state)
{
    const auto spec = grid(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(wpt::run_sweep(spec, 0));
    state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}

void BM_DistanceSerial(benchmark::State& state)
{
    const wpt::Figure5Config fig;
    const auto d = fig.grid();
    const auto tmpl = fig.schedule.build();
    for (auto _ : state)
        benchmark::DoNotOptimize(wpt::distance_study_serial(fig.model, tmpl, fig.coils, d, {}));
}

void BM_DistanceParallel(benchmark::State& state)
{
    const wpt::Figure5Config fig;
    const auto d = fig.grid();
    const auto tmpl = fig.schedule.build();
    for (auto _ : state)
        benchmark::DoNotOptimize(wpt::distance_study(fig.model, tmpl, fig.coils, d, {}, {}, 0));
}

} // namespace

BENCHMARK(BM_SweepSerial)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DistanceSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DistanceParallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
