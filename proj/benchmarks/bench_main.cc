#include <benchmark/benchmark.h>

#include "magicfab/circuits.h"
#include "magicfab/error_analysis.h"
#include "magicfab/pauli_frame.h"
#include "magicfab/pipeline.h"

using namespace magicfab;

static void BM_RunCczFactory(benchmark::State &state) {
    Circuit c = build_ccz_factory();
    RunOptions o;
    for (auto _ : state) {
        o.seed++;
        benchmark::DoNotOptimize(run_circuit(c, o).accepted);
    }
}
BENCHMARK(BM_RunCczFactory)->Unit(benchmark::kMillisecond);

static void BM_RunFifteenToOne(benchmark::State &state) {
    Circuit c = build_fifteen_to_one();
    RunOptions o;
    for (auto _ : state) {
        o.seed++;
        benchmark::DoNotOptimize(run_circuit(c, o).accepted);
    }
}
BENCHMARK(BM_RunFifteenToOne)->Unit(benchmark::kMillisecond);

static void BM_PauliFramePattern(benchmark::State &state) {
    Circuit c = build_fifteen_to_one();
    std::set<std::string> errors{"t1", "t2", "t3"};
    for (auto _ : state) {
        benchmark::DoNotOptimize(propagate_errors(c, errors).accepted);
    }
}
BENCHMARK(BM_PauliFramePattern);

static void BM_EnumerateFifteenToOneFrame(benchmark::State &state) {
    Circuit c = build_fifteen_to_one();
    EnumerateOptions o;
    o.backend = Backend::PauliFrame;
    o.threads = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(enumerate_errors(c, 3, o).leading_term);
    }
}
BENCHMARK(BM_EnumerateFifteenToOneFrame)->Unit(benchmark::kMillisecond);

static void BM_EnumerateCczStateVector(benchmark::State &state) {
    Circuit c = build_ccz_factory();
    EnumerateOptions o;
    o.backend = Backend::StateVector;
    for (auto _ : state) {
        benchmark::DoNotOptimize(enumerate_errors(c, 2, o).leading_term);
    }
}
BENCHMARK(BM_EnumerateCczStateVector)->Unit(benchmark::kMillisecond);

static void BM_Pipeline(benchmark::State &state) {
    PipelineConfig cfg = PipelineConfig::c2t_default();
    cfg.horizon_d = static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate(cfg).outputs_produced);
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Pipeline)->Arg(100000)->Arg(1000000)->Unit(benchmark::kMillisecond);

static void BM_CatalystStats(benchmark::State &state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(catalyst_error_stats(100, 1e-4, 100000, 1).p_any_bad);
    }
}
BENCHMARK(BM_CatalystStats)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
