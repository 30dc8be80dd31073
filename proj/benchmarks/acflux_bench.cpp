#include <benchmark/benchmark.h>

#include "acflux/bessel.hpp"
#include "acflux/flux_engine.hpp"
#include "acflux/floquet_green.hpp"

namespace {

acflux::ModelParams drive(double v, double omega) {
    acflux::ModelParams p;
    p.v_ac = v;
    p.omega = omega;
    return p;
}

void BM_BesselTable(benchmark::State& state) {
    const double x = static_cast<double>(state.range(0));
    const int top = static_cast<int>(2.0 * x) + 64;
    for (auto _ : state) benchmark::DoNotOptimize(acflux::bessel_j_table(top, x));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BesselTable)->RangeMultiplier(10)->Range(10, 10000)->Complexity();

void BM_Snapshot(benchmark::State& state) {
    const acflux::DrivenLevelSeries series(drive(10.0, 1e-3), {});
    double t = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(series.snapshot(t));
        t += 1.0;
    }
}
BENCHMARK(BM_Snapshot)->Unit(benchmark::kMicrosecond);

// One G and dG/dt evaluation: a pass over all poles of the snapshot.
void BM_GreenEvaluate(benchmark::State& state) {
    const acflux::DrivenLevelSeries series(drive(10.0, 1e-3), {});
    const acflux::PoleSnapshot snap = series.snapshot(1234.5);
    const double eps = state.range(0) == 0 ? -0.3 : -5000.0;
    acflux::complex g, gt;
    for (auto _ : state) {
        snap.evaluate(eps, g, gt);
        benchmark::DoNotOptimize(g);
        benchmark::DoNotOptimize(gt);
    }
    state.counters["poles"] = static_cast<double>(snap.size());
}
BENCHMARK(BM_GreenEvaluate)->Arg(0)->Arg(1)->ArgNames({"far"});

void BM_PointFluxes(benchmark::State& state) {
    const acflux::ModelParams p = state.range(0) == 0 ? drive(1.0, 0.5) : drive(10.0, 1e-3);
    const acflux::TimeDomainEngine engine(p, {});
    const double t = 0.3 * p.period();
    for (auto _ : state) benchmark::DoNotOptimize(engine.at(t));
}
BENCHMARK(BM_PointFluxes)->Arg(0)->Arg(1)->ArgNames({"fig2"})->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
