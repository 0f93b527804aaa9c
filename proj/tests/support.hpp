#pragma once

#include <cmath>
#include <random>

#include "pacdyn/grid.hpp"

namespace pacdyn::testing {

inline Field random_field(const GridSpec& g, std::uint64_t seed, double lo = -1.0, double hi = 1.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    Field u(g.node_count());
    for (double& v : u) v = dist(rng);
    return u;
}

template <class Tag>
NodalArray<Tag> random_array(std::size_t n, std::uint64_t seed, double lo = -1.0, double hi = 1.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    NodalArray<Tag> v(n);
    for (double& x : v) x = dist(rng);
    return v;
}

template <class Tag>
double max_abs_diff(const NodalArray<Tag>& a, const NodalArray<Tag>& b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
    return m;
}

template <class Tag>
double max_abs(const NodalArray<Tag>& a) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
}

/// Observed convergence order from errors at successive grid halvings.
inline double observed_order(double coarse_error, double fine_error) {
    return std::log2(coarse_error / fine_error);
}

} // namespace pacdyn::testing
