#include "pacdyn/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "pacdyn/projection.hpp"

namespace pacdyn {

namespace {

/// Location t in [0,1] of the zero between a and b, if they change sign.
std::optional<double> zero_between(double a, double b) {
    if ((a < 0.0 && b >= 0.0) || (a >= 0.0 && b < 0.0)) return a / (a - b);
    return std::nullopt;
}

struct RowCrossings {
    std::optional<double> left;   // - to + scanning in +x
    std::optional<double> right;  // + to - scanning in +x
};

RowCrossings row_crossings(const GridSpec& g, const Field& u, int j) {
    const double h = g.spacing();
    RowCrossings rc;
    for (int i = 0; i < g.cells(); ++i) {
        const double a = u[g.node(i, j)];
        const double b = u[g.node(i + 1, j)];
        if (auto t = zero_between(a, b)) {
            const double x = (i + *t) * h;
            if (a < 0.0) {
                if (!rc.left) rc.left = x;
            } else {
                rc.right = x;
            }
        }
    }
    return rc;
}

/// Least-squares slope dx/dy of x = a + b y.
double fit_slope(const std::vector<double>& ys, const std::vector<double>& xs) {
    const double n = static_cast<double>(ys.size());
    double sy = 0, sx = 0, syy = 0, sxy = 0;
    for (std::size_t k = 0; k < ys.size(); ++k) {
        sy += ys[k];
        sx += xs[k];
        syy += ys[k] * ys[k];
        sxy += xs[k] * ys[k];
    }
    return (n * sxy - sy * sx) / (n * syy - sy * sy);
}

constexpr int kFitRows = 5;

} // namespace

DiagRecord record(const RunState& state, const GridSpec& g, const ModelParams& p,
                  const SurfacePotentialSpec& s, int solver_iterations) {
    DiagRecord r;
    r.step = state.step;
    r.time = state.t;
    r.mass_bulk = bulk_mean(g, state.u);
    r.mass_surf = boundary_mean(g, state.u);
    const Energy e = discrete_energy(g, p, s, state.u);
    r.energy_bulk = e.bulk;
    r.energy_surf = e.surf;
    r.energy_total = e.total;
    r.steady_residual = steady_residual(g, p, s, state.u);
    r.solver_iterations = solver_iterations;
    return r;
}

std::vector<std::size_t> audit_energy_decay(std::span<const double> energies) {
    std::vector<std::size_t> bad;
    for (std::size_t k = 1; k < energies.size(); ++k) {
        const double prev = energies[k - 1];
        if (energies[k] > prev + kEnergySlack * (1.0 + std::abs(prev))) bad.push_back(k);
    }
    return bad;
}

std::vector<long> audit_energy_decay(std::span<const DiagRecord> series) {
    std::vector<double> e;
    e.reserve(series.size());
    for (const auto& r : series) e.push_back(r.energy_total);
    std::vector<long> steps;
    for (std::size_t k : audit_energy_decay(e)) steps.push_back(series[k].step);
    return steps;
}

MassDrift mass_drift(std::span<const DiagRecord> series) {
    MassDrift d;
    if (series.empty()) return d;
    for (const auto& r : series) {
        d.bulk = std::max(d.bulk, std::abs(r.mass_bulk - series.front().mass_bulk));
        d.surf = std::max(d.surf, std::abs(r.mass_surf - series.front().mass_surf));
    }
    return d;
}

RadiusStats zero_level_radius_stats(const GridSpec& g, const Field& u, double cx, double cy) {
    g.check(u);
    const int n = g.cells();
    const double h = g.spacing();
    std::vector<double> radii;
    for (int j = 0; j <= n; ++j) {
        for (int i = 0; i < n; ++i) {
            if (auto t = zero_between(u[g.node(i, j)], u[g.node(i + 1, j)])) {
                radii.push_back(std::hypot((i + *t) * h - cx, j * h - cy));
            }
        }
    }
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (auto t = zero_between(u[g.node(i, j)], u[g.node(i, j + 1)])) {
                radii.push_back(std::hypot(i * h - cx, (j + *t) * h - cy));
            }
        }
    }
    if (radii.empty()) throw MetricUndefinedError("field has no zero crossing");

    RadiusStats st;
    st.crossings = radii.size();
    double sum = 0.0;
    for (double r : radii) sum += r;
    st.mean_radius = sum / static_cast<double>(radii.size());
    for (double r : radii) st.max_deviation = std::max(st.max_deviation, std::abs(r - st.mean_radius));
    st.deviation_in_h = st.max_deviation / h;
    return st;
}

double contact_angle(const GridSpec& g, const Field& u) {
    g.check(u);
    const double h = g.spacing();
    std::vector<double> ys, left, right;
    bool have_left = true, have_right = true;
    for (int j = 1; j <= kFitRows && j < g.cells(); ++j) {
        const RowCrossings rc = row_crossings(g, u, j);
        ys.push_back(j * h);
        if (rc.left) left.push_back(*rc.left); else have_left = false;
        if (rc.right) right.push_back(*rc.right); else have_right = false;
    }
    if (!have_left && !have_right) {
        throw MetricUndefinedError("zero contour does not reach the bottom wall");
    }
    // Left contact line: phase phi > 0 lies to the right, angle between +x and (b, 1).
    // Right contact line: phase lies to the left, angle between -x and (b, 1).
    double sum = 0.0;
    int count = 0;
    if (have_left) {
        const double b = fit_slope(ys, left);
        sum += std::atan2(1.0, b);
        ++count;
    }
    if (have_right) {
        const double b = fit_slope(ys, right);
        sum += std::atan2(1.0, -b);
        ++count;
    }
    return sum / count * 180.0 / std::numbers::pi;
}

double droplet_base_width(const GridSpec& g, const Field& u) {
    g.check(u);
    const double h = g.spacing();
    std::vector<double> xs;
    for (int i = 0; i < g.cells(); ++i) {
        if (auto t = zero_between(u[g.node(i, 1)], u[g.node(i + 1, 1)])) xs.push_back((i + *t) * h);
    }
    if (xs.size() < 2) throw MetricUndefinedError("row y = h has fewer than two zero crossings");
    return xs.back() - xs.front();
}

ChemicalPotentialSpread chemical_potential_spread(const GridSpec& g, const ModelParams& p,
                                                  const SurfacePotentialSpec& s, const Field& u) {
    const ChemicalPotentials cp = chemical_potentials(g, p, s, u);
    const InteriorField dmu = project_bulk(g, cp.mu);
    const BoundaryField dmu_g = project_boundary(g, cp.mu_gamma);
    ChemicalPotentialSpread out;
    out.bulk_stddev = std::sqrt(bulk_inner(g, dmu, dmu) / (g.interior_weight() * g.interior_count()));
    out.surf_stddev = std::sqrt(boundary_inner(g, dmu_g, dmu_g) / (g.chain_weight() * g.chain_length()));
    return out;
}

} // namespace pacdyn
