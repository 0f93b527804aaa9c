#pragma once

#include <string>

#include "pacdyn/grid.hpp"
#include "pacdyn/krylov.hpp"
#include "pacdyn/model.hpp"

namespace pacdyn {

struct StepperConfig {
    double dt = 1e-3;
    double linear_tol = 1e-11;
    int linear_max_iter = 0;  // 0: ten times the unknown count
    double steady_tol = 1e-6;
    long max_steps = 100000;
    double field_bound = 8.0;  // stability monitor bound M

    void validate() const;
    int iteration_cap(const GridSpec& g) const;
};

struct RunState {
    Field u;          // phi on the closed square; its trace is psi
    double t = 0.0;
    long step = 0;
    bool bound_exceeded = false;  // max|u| went above StepperConfig::field_bound
};

class SolverError : public Error {
public:
    SolverError(const std::string& what, LinearSolveStats stats) : Error(what), stats_(stats) {}
    const LinearSolveStats& stats() const noexcept { return stats_; }

private:
    LinearSolveStats stats_;
};

struct StepResult {
    RunState state;
    LinearSolveStats stats;
};

/// Bracketed implicit + explicit sums of one convex-splitting step, so that
/// u_next - u_prev = dt * gamma * P(nu) blockwise.
struct SchemeIncrement {
    InteriorField nu_bulk;
    BoundaryField nu_surf;
};

/// x + dt * gamma * P * A_c x, blockwise gamma in {gamma1, gamma2} and
/// P in {P1, P2}. Never forms a matrix.
Field apply_system_operator(const GridSpec& g, const ModelParams& p, double dt, const Field& x);

/// Right-hand side u + dt * gamma * P * e(u) of the implicit step.
Field system_rhs(const GridSpec& g, const ModelParams& p, const SurfacePotentialSpec& s, double dt,
                 const Field& u);

/// One convex-splitting step: E_c implicit, E_e explicit, one coupled linear
/// solve over interior and chain unknowns, warm-started from the current
/// state. Throws SolverError if CG does not reach cfg.linear_tol.
StepResult step_convex_splitting(const RunState& state, const GridSpec& g, const ModelParams& p,
                                 const SurfacePotentialSpec& s, const StepperConfig& cfg);

/// Forward Euler on the projected flow: u - dt * gamma * P(mu, mu_Gamma).
/// Reference only; conditionally stable.
RunState step_explicit_euler(const RunState& state, const GridSpec& g, const ModelParams& p,
                             const SurfacePotentialSpec& s, double dt);

/// max(||P1 mu||_inf, ||P2 mu_Gamma||_inf).
double steady_residual(const GridSpec& g, const ModelParams& p, const SurfacePotentialSpec& s,
                       const Field& u);

SchemeIncrement scheme_increment(const GridSpec& g, const ModelParams& p,
                                 const SurfacePotentialSpec& s, const Field& u_next,
                                 const Field& u_prev);

} // namespace pacdyn
