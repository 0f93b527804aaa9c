#include <benchmark/benchmark.h>

#include "pacdyn/experiments.hpp"
#include "pacdyn/stepper.hpp"

using namespace pacdyn;

namespace {

ModelParams params_for(const GridSpec& g) {
    ModelParams p;
    p.kappa = 2.0 * g.spacing();
    return p;
}

void BM_SystemOperator(benchmark::State& state) {
    const GridSpec g = build_grid(static_cast<int>(state.range(0)));
    const ModelParams p = params_for(g);
    const Field x = init_example(ExampleId::Ex3, g);
    for (auto _ : state) benchmark::DoNotOptimize(apply_system_operator(g, p, 1e-3, x));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(g.node_count()));
}

void BM_EnergyGradient(benchmark::State& state) {
    const GridSpec g = build_grid(static_cast<int>(state.range(0)));
    const ModelParams p = params_for(g);
    const Field x = init_example(ExampleId::Ex3, g);
    const auto s = SurfacePotentialSpec::double_well();
    for (auto _ : state) benchmark::DoNotOptimize(energy_gradient(g, p, s, x));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(g.node_count()));
}

void BM_ConvexSplittingStep(benchmark::State& state) {
    const GridSpec g = build_grid(static_cast<int>(state.range(0)));
    const ModelParams p = params_for(g);
    const auto s = SurfacePotentialSpec::double_well();
    RunState st;
    st.u = init_example(ExampleId::Ex1, g);
    const StepperConfig cfg;
    int iterations = 0;
    for (auto _ : state) {
        StepResult r = step_convex_splitting(st, g, p, s, cfg);
        iterations = r.stats.iterations;
        st = std::move(r.state);
    }
    state.counters["cg_iterations"] = iterations;
}

} // namespace

BENCHMARK(BM_SystemOperator)->Arg(64)->Arg(200);
BENCHMARK(BM_EnergyGradient)->Arg(64)->Arg(200);
BENCHMARK(BM_ConvexSplittingStep)->Arg(64)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
