// Serial reference vs OpenMP kernels on the figure-sized grids.
#include "omec/entanglement.hpp"
#include "omec/filtered_output.hpp"
#include "omec/sweep.hpp"

#include <benchmark/benchmark.h>

using namespace omec;

static void BM_SweepC2(benchmark::State& st) {
    const Exec ex = st.range(0) ? Exec::Parallel : Exec::Serial;
    const auto c2 = logspace(1, 4000.999, 400);
    for (auto _ : st) benchmark::DoNotOptimize(sweep_c2(SystemParams{}, 4000, c2, true, ex));
    st.SetItemsProcessed(st.iterations() * c2.size());
    st.SetLabel(st.range(0) ? "parallel" : "serial");
}
BENCHMARK(BM_SweepC2)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

static void BM_Spectrum(benchmark::State& st) {
    const Exec ex = st.range(0) ? Exec::Parallel : Exec::Serial;
    SystemParams p;
    p.G1 = 13.3;
    p.G2 = 6.7;
    p.gamma = 1.67e-3;
    const auto w = linspace(-30, 30, 601);
    for (auto _ : st) benchmark::DoNotOptimize(spectrum(p, w, ex));
    st.SetItemsProcessed(st.iterations() * w.size());
    st.SetLabel(st.range(0) ? "parallel" : "serial");
}
BENCHMARK(BM_Spectrum)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

static void BM_Bandwidth(benchmark::State& st) {
    const Exec ex = st.range(0) ? Exec::Parallel : Exec::Serial;
    SystemParams p;
    p.G1 = p.G2 = 0.1;
    p.gamma = 3.3e-5;
    const auto sig = linspace(1e-6, 2e-4, 16);
    std::vector<double> out(sig.size());
    for (auto _ : st) {
        for_each_index(
            sig.size(),
            [&](std::size_t i) {
                FilterSpec f;
                f.sigma = sig[i];
                out[i] = en_filtered(p, f);
            },
            ex);
        benchmark::DoNotOptimize(out.data());
    }
    st.SetItemsProcessed(st.iterations() * sig.size());
    st.SetLabel(st.range(0) ? "parallel" : "serial");
}
BENCHMARK(BM_Bandwidth)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

int main(int argc, char** argv) {
    apply_thread_env();
    benchmark::Initialize(&argc, argv);
    if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
    benchmark::RunSpecifiedBenchmarks();
    benchmark::Shutdown();
    return 0;
}
