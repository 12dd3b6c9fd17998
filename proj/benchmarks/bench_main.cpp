#include <benchmark/benchmark.h>

#include "greenroute/encoding.hpp"
#include "greenroute/exact.hpp"
#include "greenroute/instgen.hpp"
#include "greenroute/sa.hpp"

using namespace greenroute;

namespace {

Instance instance(int n) {
    GenSpec spec;
    spec.customers = n;
    spec.seed = 17;
    return generate(spec);
}

void BM_Evaluate(benchmark::State& state) {
    const Instance inst = instance(static_cast<int>(state.range(0)));
    const Solution sol = initial_solution(inst, 1).solution;
    for (auto _ : state) benchmark::DoNotOptimize(evaluate(inst, sol));
}
BENCHMARK(BM_Evaluate)->Arg(10)->Arg(50)->Arg(200);

void BM_IsFeasible(benchmark::State& state) {
    const Instance inst = instance(static_cast<int>(state.range(0)));
    const Solution sol = initial_solution(inst, 1).solution;
    for (auto _ : state) benchmark::DoNotOptimize(is_feasible(inst, sol));
}
BENCHMARK(BM_IsFeasible)->Arg(10)->Arg(50)->Arg(200);

void BM_CheckFeasibility(benchmark::State& state) {
    const Instance inst = instance(static_cast<int>(state.range(0)));
    const Solution sol = initial_solution(inst, 1).solution;
    for (auto _ : state) benchmark::DoNotOptimize(check_feasibility(inst, sol));
}
BENCHMARK(BM_CheckFeasibility)->Arg(10)->Arg(50)->Arg(200);

void BM_Neighbor(benchmark::State& state) {
    const Instance inst = instance(50);
    const Solution sol = initial_solution(inst, 1).solution;
    Rng rng(3);
    const auto kind = static_cast<MoveKind>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(neighbor(inst, sol, kind, rng));
}
BENCHMARK(BM_Neighbor)->DenseRange(1, 4);

void BM_Codec(benchmark::State& state) {
    const Instance inst = instance(50);
    const Solution sol = initial_solution(inst, 1).solution;
    for (auto _ : state) benchmark::DoNotOptimize(decode(encode(sol, inst), inst));
}
BENCHMARK(BM_Codec);

void BM_Anneal(benchmark::State& state) {
    const Instance inst = instance(static_cast<int>(state.range(0)));
    SAConfig cfg;
    for (auto _ : state) benchmark::DoNotOptimize(anneal(inst, cfg));
}
BENCHMARK(BM_Anneal)->Arg(10)->Arg(20)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_SolveExact(benchmark::State& state) {
    const Instance inst = instance(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(solve_exact(inst, 60));
}
BENCHMARK(BM_SolveExact)->DenseRange(5, 9)->Unit(benchmark::kMillisecond);

void BM_ExportMilp(benchmark::State& state) {
    const Instance inst = instance(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(export_milp(inst));
}
BENCHMARK(BM_ExportMilp)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
