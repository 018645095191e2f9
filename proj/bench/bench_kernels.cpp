// Serial reference vs OpenMP kernels. Thread count comes from OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include "swipt/mdp.hpp"
#include "swipt/simulate.hpp"

using namespace swipt;

namespace {

SystemParams bench_params() {
    SystemParams p;
    p.decode_cost = 5;
    p.harvest_units = 1;
    p.rate_bad = 1;
    p.rate_good = 10;
    p.channel = ChannelSpec::iid(0.5);
    return p;
}

void BM_estimate_serial(benchmark::State& state) {
    const SystemParams p = bench_params();
    const long long episodes = state.range(0);
    for (auto _ : state) {
        const EstimateReport r =
            estimate_serial(Policy::battery_first(), p, episodes, 42);
        benchmark::DoNotOptimize(r.mean);
    }
    state.SetItemsProcessed(state.iterations() * episodes);
}

void BM_estimate_openmp(benchmark::State& state) {
    const SystemParams p = bench_params();
    const long long episodes = state.range(0);
    for (auto _ : state) {
        const EstimateReport r = estimate(Policy::battery_first(), p, episodes, 42);
        benchmark::DoNotOptimize(r.mean);
    }
    state.SetItemsProcessed(state.iterations() * episodes);
}

MdpConfig bench_cfg(bool parallel) {
    MdpConfig cfg;
    cfg.rho_grid = MdpConfig::uniform_rho_grid(101);
    cfg.parallel = parallel;
    return cfg;
}

void BM_value_iteration_serial(benchmark::State& state) {
    const SystemParams p = bench_params();
    for (auto _ : state) {
        const MdpSolution sol = value_iteration(p, bench_cfg(false));
        benchmark::DoNotOptimize(sol.residual);
    }
}

void BM_value_iteration_openmp(benchmark::State& state) {
    const SystemParams p = bench_params();
    for (auto _ : state) {
        const MdpSolution sol = value_iteration(p, bench_cfg(true));
        benchmark::DoNotOptimize(sol.residual);
    }
}

}  // namespace

BENCHMARK(BM_estimate_serial)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_estimate_openmp)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_value_iteration_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_value_iteration_openmp)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
