#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "pacdyn/parallel.hpp"

namespace pacdyn {

struct LinearSolveStats {
    int iterations = 0;
    double relative_residual = 0.0;
    bool converged = false;
};

/// Matrix-free conjugate gradients in the inner product <a,b> = sum w_k a_k b_k.
///
/// `apply(in, out)` must be self-adjoint and positive definite in that inner
/// product on the affine space x0 + span{r0, A r0, ...}. `x` holds the initial
/// guess on entry and the solution on exit. Convergence is declared when the
/// weighted residual norm drops to tol * ||rhs||_w.
template <class Apply>
LinearSolveStats solve_linear(const Apply& apply, std::span<const double> rhs, std::span<double> x,
                              std::span<const double> weights, double tol, int max_iter) {
    using parallel::weighted_dot;
    const std::size_t n = rhs.size();
    std::vector<double> r(n), p(n), q(n);

    auto true_residual = [&]() {
        apply(std::span<const double>(x), std::span<double>(q));
        for (std::size_t k = 0; k < n; ++k) r[k] = rhs[k] - q[k];
        return weighted_dot(r, r, weights);
    };

    const double rhs_norm = std::sqrt(weighted_dot(rhs, rhs, weights));
    const double target = tol * rhs_norm;
    LinearSolveStats stats;
    if (rhs_norm == 0.0) {
        for (double& v : x) v = 0.0;
        stats.converged = true;
        return stats;
    }
    double rr = true_residual();
    bool breakdown = false;

    // Outer loop restarts from the true residual if recurrence drift left
    // the iterate short of the target.
    while (std::sqrt(rr) > target && stats.iterations < max_iter && !breakdown) {
        p = r;
        while (stats.iterations < max_iter) {
            ++stats.iterations;
            apply(std::span<const double>(p), std::span<double>(q));
            const double pq = weighted_dot(p, q, weights);
            if (!(pq > 0.0)) {
                breakdown = true;
                break;
            }
            const double alpha = rr / pq;
            for (std::size_t k = 0; k < n; ++k) {
                x[k] += alpha * p[k];
                r[k] -= alpha * q[k];
            }
            const double rr_next = weighted_dot(r, r, weights);
            const double beta = rr_next / rr;
            rr = rr_next;
            if (std::sqrt(rr) <= target) break;
            for (std::size_t k = 0; k < n; ++k) p[k] = r[k] + beta * p[k];
        }
        rr = true_residual();
    }

    stats.converged = std::sqrt(rr) <= target;
    stats.relative_residual = rhs_norm > 0.0 ? std::sqrt(rr) / rhs_norm : std::sqrt(rr);
    return stats;
}

} // namespace pacdyn
