#include "pacdyn/run.hpp"

namespace pacdyn {

std::string exit_reason_name(ExitReason r) {
    switch (r) {
        case ExitReason::Steady: return "steady";
        case ExitReason::MaxSteps: return "max_steps";
        case ExitReason::Error: return "error";
    }
    return "error";
}

RunResult run(const RunConfig& cfg, RunObserver* observer) {
    cfg.validate();
    const GridSpec g(cfg.N);
    return run(cfg, initial_field(cfg, g), observer);
}

RunResult run(const RunConfig& cfg, Field initial, RunObserver* observer) {
    cfg.validate();
    const GridSpec g(cfg.N);
    g.check(initial);
    const ModelParams p = cfg.model_params();
    const StepperConfig sc = cfg.stepper_config();
    const SurfacePotentialSpec& s = cfg.surface;

    RunResult result;
    RunState state{std::move(initial), 0.0, 0, false};

    auto emit = [&](const DiagRecord& r) {
        result.series.push_back(r);
        if (observer) observer->on_record(r);
    };

    DiagRecord rec = record(state, g, p, s);
    emit(rec);
    if (observer) observer->on_snapshot(state);
    long last_snapshot = 0;

    result.reason = ExitReason::MaxSteps;
    while (state.step < sc.max_steps) {
        try {
            StepResult next = step_convex_splitting(state, g, p, s, sc);
            state = std::move(next.state);
            rec = record(state, g, p, s, next.stats.iterations);
        } catch (const SolverError& e) {
            result.reason = ExitReason::Error;
            result.error = e.what();
            break;
        }
        emit(rec);
        if (state.step % cfg.snapshot_every == 0 && observer) {
            observer->on_snapshot(state);
            last_snapshot = state.step;
        }
        if (rec.steady_residual <= sc.steady_tol) {
            result.reason = ExitReason::Steady;
            break;
        }
    }
    if (observer && last_snapshot != state.step) observer->on_snapshot(state);

    result.final_residual = result.series.back().steady_residual;
    result.bound_exceeded = state.bound_exceeded;
    result.final_state = std::move(state);
    return result;
}

} // namespace pacdyn
