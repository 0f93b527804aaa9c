#include "pacdyn/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pacdyn/projection.hpp"

namespace pacdyn {

namespace {

void require(bool ok, const std::string& message) {
    if (!ok) throw ConfigError(message);
}

/// Matrix-free x -> x + dt * gamma * P * A_c x with reusable scratch.
class SystemOperator {
public:
    SystemOperator(const GridSpec& g, const ModelParams& p, double dt)
        : g_(g), p_(p), dt_(dt), scratch_(g.node_count()) {}

    void operator()(std::span<const double> in, std::span<double> out) const {
        const auto w = g_.node_weights();
        const auto omega = g_.unknown_weights();
        const double h = g_.spacing();
        detail::apply_stiffness(g_, p_.kappa, in.data(), scratch_.data());
        double bulk_num = 0.0, bulk_den = 0.0, surf_num = 0.0, surf_den = 0.0;
        for (std::size_t n = 0; n < in.size(); ++n) {
            double d = scratch_[n] + w[n] * p_.S1 * in[n];
            if (g_.on_boundary(n)) {
                d += h * p_.S2 * in[n];
                surf_num += d;
                surf_den += omega[n];
            } else {
                bulk_num += d;
                bulk_den += omega[n];
            }
            scratch_[n] = d / omega[n];
        }
        const double bulk_mean = bulk_num / bulk_den;
        const double surf_mean = surf_num / surf_den;
        const double s1 = dt_ * p_.gamma1;
        const double s2 = dt_ * p_.gamma2;
        for (std::size_t n = 0; n < in.size(); ++n) {
            out[n] = g_.on_boundary(n) ? in[n] + s2 * (scratch_[n] - surf_mean)
                                       : in[n] + s1 * (scratch_[n] - bulk_mean);
        }
    }

private:
    const GridSpec& g_;
    const ModelParams& p_;
    double dt_;
    mutable std::vector<double> scratch_;
};

/// Weights of the inner product in which the system operator is self-adjoint.
std::vector<double> solver_weights(const GridSpec& g, const ModelParams& p) {
    const auto omega = g.unknown_weights();
    std::vector<double> w(omega.begin(), omega.end());
    for (std::size_t n = 0; n < w.size(); ++n) w[n] /= g.on_boundary(n) ? p.gamma2 : p.gamma1;
    return w;
}

double max_abs(const Field& u) {
    double m = 0.0;
    for (double v : u) m = std::max(m, std::abs(v));
    return m;
}

} // namespace

void StepperConfig::validate() const {
    require(dt > 0.0 && std::isfinite(dt), "dt must be positive");
    require(linear_tol > 0.0 && linear_tol < 1.0, "linear_tol must lie in (0, 1)");
    require(linear_max_iter >= 0, "linear_max_iter must be non-negative");
    require(steady_tol > 0.0, "steady_tol must be positive");
    require(max_steps >= 0, "max_steps must be non-negative");
    require(field_bound > 0.0, "field_bound must be positive");
}

int StepperConfig::iteration_cap(const GridSpec& g) const {
    return linear_max_iter > 0 ? linear_max_iter : static_cast<int>(10 * g.node_count());
}

Field apply_system_operator(const GridSpec& g, const ModelParams& p, double dt, const Field& x) {
    g.check(x);
    Field out(x.size());
    SystemOperator(g, p, dt)(x.span(), out.span());
    return out;
}

Field system_rhs(const GridSpec& g, const ModelParams& p, const SurfacePotentialSpec& s, double dt,
                 const Field& u) {
    Field e = explicit_part(g, p, s, u);
    project_combined(g, e);
    Field rhs = u;
    for (std::size_t n = 0; n < rhs.size(); ++n) {
        rhs[n] += dt * (g.on_boundary(n) ? p.gamma2 : p.gamma1) * e[n];
    }
    return rhs;
}

StepResult step_convex_splitting(const RunState& state, const GridSpec& g, const ModelParams& p,
                                 const SurfacePotentialSpec& s, const StepperConfig& cfg) {
    g.check(state.u);
    const Field rhs = system_rhs(g, p, s, cfg.dt, state.u);
    const auto weights = solver_weights(g, p);

    StepResult result;
    result.state.u = state.u;
    const SystemOperator op(g, p, cfg.dt);
    result.stats = solve_linear(op, rhs.span(), result.state.u.span(), weights, cfg.linear_tol,
                                cfg.iteration_cap(g));
    if (!result.stats.converged) {
        throw SolverError("linear solve did not converge at step " + std::to_string(state.step + 1) +
                              " (iterations " + std::to_string(result.stats.iterations) +
                              ", relative residual " + std::to_string(result.stats.relative_residual) + ")",
                          result.stats);
    }
    result.state.step = state.step + 1;
    result.state.t = static_cast<double>(result.state.step) * cfg.dt;
    result.state.bound_exceeded = state.bound_exceeded || max_abs(result.state.u) > cfg.field_bound;
    return result;
}

RunState step_explicit_euler(const RunState& state, const GridSpec& g, const ModelParams& p,
                             const SurfacePotentialSpec& s, double dt) {
    Field force = energy_gradient(g, p, s, state.u);
    project_combined(g, force);
    RunState next = state;
    for (std::size_t n = 0; n < next.u.size(); ++n) {
        next.u[n] -= dt * (g.on_boundary(n) ? p.gamma2 : p.gamma1) * force[n];
    }
    next.step = state.step + 1;
    next.t = state.t + dt;
    return next;
}

double steady_residual(const GridSpec& g, const ModelParams& p, const SurfacePotentialSpec& s,
                       const Field& u) {
    Field force = energy_gradient(g, p, s, u);
    project_combined(g, force);
    return max_abs(force);
}

SchemeIncrement scheme_increment(const GridSpec& g, const ModelParams& p,
                                 const SurfacePotentialSpec& s, const Field& u_next,
                                 const Field& u_prev) {
    Field nu = explicit_part(g, p, s, u_prev);
    const Field implicit = apply_implicit_part(g, p, u_next);
    for (std::size_t n = 0; n < nu.size(); ++n) nu[n] -= implicit[n];
    return {restrict_interior(g, nu), trace(g, nu)};
}

} // namespace pacdyn
