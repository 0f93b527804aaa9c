#include "pacdyn/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <vector>

#ifdef PACDYN_HAVE_OPENMP
#include <omp.h>
#endif

namespace pacdyn::parallel {

namespace {

constexpr std::size_t kBlock = 1024;

int g_default_threads = 0;

template <class Term>
double blocked_sum(std::size_t n, Term term) {
    const std::size_t blocks = (n + kBlock - 1) / kBlock;
    if (blocks <= 1) {
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) s += term(k);
        return s;
    }
    std::vector<double> partial(blocks, 0.0);
    const auto nb = static_cast<long>(blocks);
#ifdef PACDYN_HAVE_OPENMP
#pragma omp parallel for schedule(static) if (blocks >= 4)
#endif
    for (long b = 0; b < nb; ++b) {
        const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
        const std::size_t hi = std::min(n, lo + kBlock);
        double s = 0.0;
        for (std::size_t k = lo; k < hi; ++k) s += term(k);
        partial[static_cast<std::size_t>(b)] = s;
    }
    double total = 0.0;
    for (double s : partial) total += s;
    return total;
}

} // namespace

void set_thread_cap(int threads) {
#ifdef PACDYN_HAVE_OPENMP
    if (g_default_threads == 0) g_default_threads = omp_get_max_threads();
    omp_set_num_threads(threads >= 1 ? threads : g_default_threads);
#else
    (void)threads;
#endif
}

int thread_cap() {
#ifdef PACDYN_HAVE_OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

bool apply_thread_env() {
    const char* env = std::getenv("PACDYN_THREADS");
    if (env == nullptr || *env == '\0') return true;
    try {
        std::size_t used = 0;
        const int n = std::stoi(env, &used);
        if (used != std::string(env).size() || n < 1) return false;
        set_thread_cap(n);
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

double weighted_dot(std::span<const double> a, std::span<const double> b,
                    std::span<const double> w) {
    return blocked_sum(a.size(), [&](std::size_t k) { return a[k] * b[k] * w[k]; });
}

double weighted_sum(std::span<const double> a, std::span<const double> w) {
    return blocked_sum(a.size(), [&](std::size_t k) { return a[k] * w[k]; });
}

} // namespace pacdyn::parallel
