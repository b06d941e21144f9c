#include <benchmark/benchmark.h>

#include "riop/kernelop.hpp"
#include "riop/kfunc.hpp"
#include "riop/verify.hpp"

using namespace riop;

namespace {

PiecewisePowerFn sample_fn() {
    GenProfile prof;
    prof.p_noninc = 0;
    return gen_function(std::uint64_t{7}, prof);
}

Exec exec_of(const benchmark::State& st) { return st.range(0) ? Exec::parallel : Exec::serial; }

void BM_tabulate(benchmark::State& st) {
    const PiecewisePowerFn f = sample_fn();
    const GridSpec grid{1e-6, 1e6, 256, {}};
    for (auto _ : st) benchmark::DoNotOptimize(tabulate(f, grid, {exec_of(st), true}));
}

void BM_apply_tab(benchmark::State& st) {
    const PiecewisePowerFn f = sample_fn();
    const Kernel a = Kernel::laplace();
    const GridSpec grid{1e-3, 1e3, 32, {}};
    for (auto _ : st) benchmark::DoNotOptimize(apply_tab(a, f, grid, exec_of(st)));
}

void BM_k_oracle(benchmark::State& st) {
    const Distribution d(sample_fn());
    const OracleOptions opt{1024, {}, exec_of(st)};
    for (auto _ : st)
        benchmark::DoNotOptimize(k_oracle(d, 0.7, SpaceSpec::small_m(0.5), SpaceSpec::linf(), opt));
}

void BM_verify(benchmark::State& st) {
    const PropertySpec* p = find_property("hardy-littlewood");
    RunOptions opt;
    opt.trials = 200;
    opt.exec = exec_of(st);
    for (auto _ : st) benchmark::DoNotOptimize(run_property(*p, opt));
}

}  // namespace

// arg 0: serial reference, arg 1: OpenMP
BENCHMARK(BM_tabulate)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_apply_tab)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_k_oracle)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_verify)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
