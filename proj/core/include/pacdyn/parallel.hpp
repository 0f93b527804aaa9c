#pragma once

#include <cstddef>
#include <span>

namespace pacdyn::parallel {

/// Caps the number of worker threads used by node loops. Values < 1 restore
/// the runtime default. No-op when built without OpenMP.
void set_thread_cap(int threads);
int thread_cap();

/// Applies the PACDYN_THREADS environment variable, if set and valid.
/// Returns false when the variable holds something other than a positive integer.
bool apply_thread_env();

/// Sum of a[k]*b[k]*w[k]. Partial sums are formed over fixed-size blocks and
/// combined in block order, so the result does not depend on the thread count.
double weighted_dot(std::span<const double> a, std::span<const double> b,
                    std::span<const double> w);

double weighted_sum(std::span<const double> a, std::span<const double> w);

} // namespace pacdyn::parallel
