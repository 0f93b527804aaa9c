#include <gtest/gtest.h>

#include <cmath>

#include "oracles/reference.hpp"
#include "pacdyn/diagnostics.hpp"
#include "pacdyn/experiments.hpp"
#include "pacdyn/parallel.hpp"
#include "pacdyn/projection.hpp"
#include "pacdyn/stepper.hpp"
#include "support.hpp"

using namespace pacdyn;
using pacdyn::testing::max_abs;
using pacdyn::testing::max_abs_diff;
using pacdyn::testing::random_field;

namespace {

ModelParams params_for(const GridSpec& g) {
    ModelParams p;
    p.kappa = 2.0 * g.spacing();
    return p;
}

RunState start(Field u) {
    RunState s;
    s.u = std::move(u);
    return s;
}

const auto kDoubleWell = SurfacePotentialSpec::double_well();

} // namespace

TEST(SystemOperator, IdentityAtZeroStep) {
    const GridSpec g = build_grid(8);
    const ModelParams p = params_for(g);
    const Field x = random_field(g, 1);
    EXPECT_EQ(apply_system_operator(g, p, 0.0, x), x);
    const Field zero(g.node_count(), 0.0);
    EXPECT_EQ(apply_system_operator(g, p, 1e-3, zero), zero);
}

TEST(SystemOperator, MatchesDenseAssembly) {
    const int n = 8;
    const GridSpec g = build_grid(n);
    const ModelParams p = params_for(g);
    for (double dt : {1e-3, 1e-1}) {
        const auto dense = oracle::assemble(n, p, dt);
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            const Field x = random_field(g, seed);
            const Eigen::VectorXd ref = dense.system * Eigen::Map<const Eigen::VectorXd>(x.data(), x.size());
            const Field y = apply_system_operator(g, p, dt, x);
            for (std::size_t k = 0; k < x.size(); ++k) EXPECT_NEAR(y[k], ref(k), 1e-12 * (1 + std::abs(ref(k))));
        }
    }
}

TEST(SystemOperator, RightHandSideMatchesDenseAssembly) {
    const int n = 8;
    const GridSpec g = build_grid(n);
    const ModelParams p = params_for(g);
    const auto s = SurfacePotentialSpec::moving_contact_line(60.0, 0.5);
    const Field u = random_field(g, 4);
    const auto dense = oracle::assemble(n, p, 2e-3);
    const Eigen::VectorXd e = oracle::explicit_part(n, p, s, u.values());
    const Eigen::VectorXd ref = Eigen::Map<const Eigen::VectorXd>(u.data(), u.size()) +
                                2e-3 * dense.gamma.asDiagonal() * (dense.project * e);
    const Field rhs = system_rhs(g, p, s, 2e-3, u);
    for (std::size_t k = 0; k < u.size(); ++k) EXPECT_NEAR(rhs[k], ref(k), 1e-12 * (1 + std::abs(ref(k))));
}

TEST(Step, MatchesDenseSolve) {
    const int n = 8;
    const GridSpec g = build_grid(n);
    const ModelParams p = params_for(g);
    StepperConfig cfg;
    const SurfacePotentialSpec surfaces[] = {kDoubleWell, SurfacePotentialSpec::moving_contact_line(30.0, 0.5)};
    for (const auto& s : surfaces) {
        for (const Field& u0 : {init_example(ExampleId::Ex1, g), random_field(g, 17)}) {
            const StepResult r = step_convex_splitting(start(u0), g, p, s, cfg);
            const auto ref = oracle::dense_step(n, p, s, cfg.dt, u0.values());
            EXPECT_LE(max_abs_diff(r.state.u, Field(ref)), 1e-9);
        }
    }
}

TEST(Step, ConstantsAtPotentialCriticalPointsAreFixed) {
    const GridSpec g = build_grid(16);
    const ModelParams p = params_for(g);
    for (double c : {-1.0, 0.0, 1.0}) {
        const Field u(g.node_count(), c);
        const StepResult r = step_convex_splitting(start(u), g, p, kDoubleWell, StepperConfig{});
        EXPECT_LE(max_abs_diff(r.state.u, u), 1e-13);
        EXPECT_EQ(r.state.step, 1);
        EXPECT_DOUBLE_EQ(r.state.t, 1e-3);
    }
}

TEST(Step, VanishingStepBarelyMoves) {
    const GridSpec g = build_grid(16);
    const ModelParams p = params_for(g);
    const Field u = init_example(ExampleId::Ex1, g);
    StepperConfig cfg;
    cfg.dt = 1e-12;
    const StepResult r = step_convex_splitting(start(u), g, p, kDoubleWell, cfg);
    EXPECT_LE(max_abs_diff(r.state.u, u), 1e-6);
}

TEST(Step, SolvesTheLinearSystem) {
    const GridSpec g = build_grid(16);
    const ModelParams p = params_for(g);
    StepperConfig cfg;
    const Field u = init_example(ExampleId::Ex3, g);
    const StepResult r = step_convex_splitting(start(u), g, p, kDoubleWell, cfg);
    EXPECT_TRUE(r.stats.converged);
    const Field lhs = apply_system_operator(g, p, cfg.dt, r.state.u);
    const Field rhs = system_rhs(g, p, kDoubleWell, cfg.dt, u);
    EXPECT_LE(max_abs_diff(lhs, rhs), 1e-8 * max_abs(rhs));
}

TEST(Step, IterationBaseline) {
    // Regression baseline for the matrix-free solve at N = 16.
    const GridSpec g = build_grid(16);
    const ModelParams p = params_for(g);
    const StepResult r = step_convex_splitting(start(init_example(ExampleId::Ex1, g)), g, p, kDoubleWell, StepperConfig{});
    EXPECT_TRUE(r.stats.converged);
    EXPECT_LT(r.stats.iterations, 300);
    EXPECT_LE(r.stats.iterations, 12);
}

TEST(Step, ReportsSolverFailure) {
    const GridSpec g = build_grid(16);
    const ModelParams p = params_for(g);
    StepperConfig cfg;
    cfg.linear_max_iter = 1;
    cfg.dt = 1e-1;
    try {
        step_convex_splitting(start(random_field(g, 3)), g, p, kDoubleWell, cfg);
        FAIL() << "expected a solver error";
    } catch (const SolverError& e) {
        EXPECT_FALSE(e.stats().converged);
        EXPECT_EQ(e.stats().iterations, 1);
    }
}

TEST(Step, IncrementIdentity) {
    const GridSpec g = build_grid(12);
    const ModelParams p = params_for(g);
    const auto s = SurfacePotentialSpec::moving_contact_line(150.0, 1.0);
    StepperConfig cfg;
    cfg.linear_tol = 1e-13;
    const Field u = random_field(g, 21);
    const StepResult r = step_convex_splitting(start(u), g, p, s, cfg);
    const SchemeIncrement nu = scheme_increment(g, p, s, r.state.u, u);
    const InteriorField pb = project_bulk(g, nu.nu_bulk);
    const BoundaryField ps = project_boundary(g, nu.nu_surf);
    const InteriorField ub = restrict_interior(g, r.state.u), vb = restrict_interior(g, u);
    const BoundaryField us = trace(g, r.state.u), vs = trace(g, u);
    for (std::size_t k = 0; k < pb.size(); ++k) EXPECT_NEAR(ub[k] - vb[k], cfg.dt * p.gamma1 * pb[k], 1e-9);
    for (std::size_t k = 0; k < ps.size(); ++k) EXPECT_NEAR(us[k] - vs[k], cfg.dt * p.gamma2 * ps[k], 1e-9);
}

TEST(Step, ConservesBothMasses) {
    const GridSpec g = build_grid(16);
    const ModelParams p = params_for(g);
    StepperConfig cfg;
    RunState st = start(random_field(g, 5, -0.5, 0.5));
    const double mb = bulk_mean(g, st.u), ms = boundary_mean(g, st.u);
    for (int k = 0; k < 20; ++k) {
        st = step_convex_splitting(st, g, p, kDoubleWell, cfg).state;
        EXPECT_NEAR(bulk_mean(g, st.u), mb, 1e-12);
        EXPECT_NEAR(boundary_mean(g, st.u), ms, 1e-12);
    }
}

TEST(Step, EnergyDecaysForLargeSteps) {
    const GridSpec g = build_grid(16);
    const ModelParams p = params_for(g);
    const SurfacePotentialSpec surfaces[] = {kDoubleWell, SurfacePotentialSpec::moving_contact_line(30.0, 1.0)};
    for (const auto& s : surfaces) {
        for (double dt : {1e-3, 1e-2, 1e-1, 1.0}) {
            StepperConfig cfg;
            cfg.dt = dt;
            RunState st = start(random_field(g, 8));
            std::vector<double> energies{discrete_energy(g, p, s, st.u).total};
            for (int k = 0; k < 15; ++k) {
                st = step_convex_splitting(st, g, p, s, cfg).state;
                energies.push_back(discrete_energy(g, p, s, st.u).total);
            }
            EXPECT_TRUE(audit_energy_decay(energies).empty()) << "dt=" << dt;
            EXPECT_FALSE(st.bound_exceeded);
        }
    }
}

TEST(Step, BoundMonitor) {
    const GridSpec g = build_grid(8);
    const ModelParams p = params_for(g);
    StepperConfig cfg;
    cfg.field_bound = 0.5;
    const StepResult r = step_convex_splitting(start(init_example(ExampleId::Ex1, g)), g, p, kDoubleWell, cfg);
    EXPECT_TRUE(r.state.bound_exceeded);
}

TEST(Step, DeterministicAcrossThreadCounts) {
    const GridSpec g = build_grid(48);
    const ModelParams p = params_for(g);
    const Field u = random_field(g, 12);
    auto advance = [&] {
        RunState st = start(u);
        for (int k = 0; k < 3; ++k) st = step_convex_splitting(st, g, p, kDoubleWell, StepperConfig{}).state;
        return st.u;
    };
    const int saved = parallel::thread_cap();
    parallel::set_thread_cap(1);
    const Field one = advance();
    parallel::set_thread_cap(4);
    const Field four = advance();
    const Field again = advance();
    parallel::set_thread_cap(saved);
    EXPECT_EQ(four, again);
    EXPECT_LE(max_abs_diff(one, four), 1e-12);
}

TEST(Step, ConfigValidation) {
    StepperConfig cfg;
    EXPECT_NO_THROW(cfg.validate());
    cfg.dt = 0.0;
    EXPECT_THROW(cfg.validate(), ConfigError);
    cfg = {};
    cfg.linear_tol = 1.0;
    EXPECT_THROW(cfg.validate(), ConfigError);
    cfg = {};
    cfg.linear_max_iter = -1;
    EXPECT_THROW(cfg.validate(), ConfigError);
    cfg = {};
    EXPECT_EQ(cfg.iteration_cap(build_grid(4)), 250);
}

TEST(ExplicitEuler, FixedPointsAndZeroStep) {
    const GridSpec g = build_grid(8);
    const ModelParams p = params_for(g);
    const Field one(g.node_count(), 1.0);
    EXPECT_EQ(step_explicit_euler(start(one), g, p, kDoubleWell, 1e-6).u, one);
    const Field u = random_field(g, 2);
    EXPECT_EQ(step_explicit_euler(start(u), g, p, kDoubleWell, 0.0).u, u);
}

TEST(ExplicitEuler, SplittingConvergesAtFirstOrder) {
    // First order shows once dt * gamma * S is well below one; at the default
    // dt = 1e-3 the stabilization still dominates the error.
    const GridSpec g = build_grid(16);
    const ModelParams p = params_for(g);
    const Field u0 = init_example(ExampleId::Ex1, g);
    const double horizon = 1e-3;

    RunState ref = start(u0);
    for (int k = 0; k < 10000; ++k) ref = step_explicit_euler(ref, g, p, kDoubleWell, 1e-7);

    std::vector<double> gaps;
    for (double dt : {3.125e-5, 1.5625e-5, 7.8125e-6}) {
        StepperConfig cfg;
        cfg.dt = dt;
        cfg.linear_tol = 1e-13;
        RunState st = start(u0);
        const long steps = std::lround(horizon / dt);
        for (long k = 0; k < steps; ++k) st = step_convex_splitting(st, g, p, kDoubleWell, cfg).state;
        gaps.push_back(max_abs_diff(st.u, ref.u));
    }
    EXPECT_NEAR(std::log2(gaps[0] / gaps[1]), 1.0, 0.2);
    EXPECT_NEAR(std::log2(gaps[1] / gaps[2]), 1.0, 0.2);
    EXPECT_LT(gaps[2], 0.03);
}

TEST(SteadyResidual, MatchesDenseProjectedGradient) {
    const int n = 8;
    const GridSpec g = build_grid(n);
    const ModelParams p = params_for(g);
    const auto dense = oracle::assemble(n, p, 0.0);
    for (const auto& s : {kDoubleWell, SurfacePotentialSpec::moving_contact_line(120.0, 0.7)}) {
        const Field u = random_field(g, 31);
        const Eigen::VectorXd uv = Eigen::Map<const Eigen::VectorXd>(u.data(), u.size());
        const Eigen::VectorXd grad = dense.implicit * uv - oracle::explicit_part(n, p, s, u.values());
        const double ref = (dense.project * grad).cwiseAbs().maxCoeff();
        EXPECT_NEAR(steady_residual(g, p, s, u), ref, 1e-10 * ref);
    }
    EXPECT_EQ(steady_residual(g, p, kDoubleWell, Field(g.node_count(), 1.0)), 0.0);
}
