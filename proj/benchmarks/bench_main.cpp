#include <benchmark/benchmark.h>

#include "mixmoran/mixmoran.hpp"

using namespace mixmoran;

static void BM_StepCycle(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const Graph g = cycle_graph(n);
    Rng rng(1);
    std::vector<Vertex> half;
    for (std::size_t v = 0; v < n / 2; ++v) half.push_back(static_cast<Vertex>(v));
    Configuration cfg = Configuration::of(n, half);
    for (auto _ : state) {
        step_in_place(g, cfg, {0.5, 2.0}, rng);
        if (cfg.is_absorbing()) cfg = Configuration::of(n, half);
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_StepCycle)->Arg(100)->Arg(10000);

static void BM_RunToAbsorptionStar(benchmark::State& state) {
    const Graph g = star_graph(static_cast<std::size_t>(state.range(0)));
    const auto s0 = Configuration::of(g.vertex_count(), {1});
    std::uint64_t i = 0;
    for (auto _ : state) {
        Rng rng = Rng::stream(7, i++);
        benchmark::DoNotOptimize(run_to_absorption(g, s0, {0.5, 1.5}, rng, 1'000'000'000));
    }
}
BENCHMARK(BM_RunToAbsorptionStar)->Arg(9)->Arg(99);

static void BM_ExactSolve(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    const Graph g = cycle_graph(n);
    SolveOptions opts;
    opts.method = state.range(1) ? SolverMethod::SparseLU : SolverMethod::GaussSeidel;
    for (auto _ : state) benchmark::DoNotOptimize(solve(g, {0.5, 2.0}, opts));
}
BENCHMARK(BM_ExactSolve)->Args({10, 0})->Args({10, 1})->Args({12, 1})->Args({14, 0})->Unit(benchmark::kMillisecond);

static void BM_CycleFormula(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(cycle_fp(n, {0.3, 1.7}));
}
BENCHMARK(BM_CycleFormula)->Arg(100)->Arg(100000);

static void BM_StarRecurrence(benchmark::State& state) {
    const std::size_t leaves = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(star_fp<double>(leaves, {0.3, 1.7}));
}
BENCHMARK(BM_StarRecurrence)->Arg(9)->Arg(1000);
BENCHMARK_MAIN();
