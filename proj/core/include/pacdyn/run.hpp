#pragma once

#include <string>
#include <vector>

#include "pacdyn/diagnostics.hpp"
#include "pacdyn/experiments.hpp"
#include "pacdyn/stepper.hpp"

namespace pacdyn {

enum class ExitReason { Steady, MaxSteps, Error };

std::string exit_reason_name(ExitReason r);

/// Receives the run's output as it is produced. Records arrive in step order
/// (the initial state first); snapshots at step 0, every snapshot_every
/// steps, and for the final state.
class RunObserver {
public:
    virtual ~RunObserver() = default;
    virtual void on_record(const DiagRecord&) {}
    virtual void on_snapshot(const RunState&) {}
};

struct RunResult {
    RunState final_state;
    std::vector<DiagRecord> series;
    ExitReason reason = ExitReason::MaxSteps;
    std::string error;  // set when reason == Error
    double final_residual = 0.0;
    bool bound_exceeded = false;
};

/// Integrates with the convex-splitting stepper until the steady residual
/// drops to steady_tol or max_steps is reached. A failed step ends the run
/// with reason Error; everything produced before it is kept.
RunResult run(const RunConfig& cfg, RunObserver* observer = nullptr);
RunResult run(const RunConfig& cfg, Field initial, RunObserver* observer = nullptr);

} // namespace pacdyn
