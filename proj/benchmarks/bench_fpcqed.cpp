#include <benchmark/benchmark.h>

#include "fpcqed/pipeline.hpp"

using namespace fpcqed;

namespace {

void BM_DecomposeLdos(benchmark::State& state) {
    RunConfig c = preset("fig2");
    const double r = static_cast<double>(state.range(0)) / 100.0;
    for (auto _ : state) benchmark::DoNotOptimize(params_point(c, r));
}
BENCHMARK(BM_DecomposeLdos)->Arg(20)->Arg(90)->Arg(99)->Unit(benchmark::kMillisecond);

void BM_LdosScan(benchmark::State& state) {
    const RunConfig c = preset("fig1d");
    for (auto _ : state) benchmark::DoNotOptimize(ldos_scan(c));
}
BENCHMARK(BM_LdosScan)->Unit(benchmark::kMicrosecond);

void BM_BuildSpectrum(benchmark::State& state) {
    const auto p = operating_point(preset("fig3-short"), 0.1);
    for (auto _ : state) benchmark::DoNotOptimize(operating_spectrum(p));
}
BENCHMARK(BM_BuildSpectrum)->Unit(benchmark::kMillisecond);

void BM_SpectrumRow(benchmark::State& state) {
    const auto S = operating_spectrum(operating_point(preset("fig3-short"), 0.1));
    double w = -200.0;
    for (auto _ : state) {
        const auto row = S.row(w);
        benchmark::DoNotOptimize(row(3.0));
        w = w > 200.0 ? -200.0 : w + 0.7;
    }
}
BENCHMARK(BM_SpectrumRow)->Unit(benchmark::kMicrosecond);

void BM_FomPoint(benchmark::State& state) {
    const RunConfig c = preset(state.range(0) == 0 ? "fig3-short" : "fig3-long");
    for (auto _ : state) benchmark::DoNotOptimize(run_fom_point(c, 0.1, Method::Both));
}
BENCHMARK(BM_FomPoint)->Arg(0)->Arg(1)->Unit(benchmark::kSecond)->Iterations(1);

}  // namespace
BENCHMARK_MAIN();
