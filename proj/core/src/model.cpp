#include "pacdyn/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace pacdyn {

namespace {

constexpr double kPi = std::numbers::pi;

void require_positive(double value, const char* name) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw ConfigError(std::string(name) + " must be positive and finite, got " +
                          std::to_string(value));
    }
}

double bound_for(double S) { return std::sqrt((2.0 * S + 1.0) / 3.0); }

} // namespace

PotentialValue bulk_potential(double phi) {
    const double q = phi * phi - 1.0;
    return {0.25 * q * q, phi * q};
}

void SurfacePotentialSpec::validate() const {
    if (kind == SurfaceKind::MovingContactLine) {
        if (!(theta_s_deg > 0.0 && theta_s_deg < 180.0)) {
            throw ConfigError("surface.theta_s must lie in (0, 180) degrees, got " +
                              std::to_string(theta_s_deg));
        }
        require_positive(gamma_tilde, "surface.gamma_tilde");
    }
}

std::string SurfacePotentialSpec::name() const {
    return kind == SurfaceKind::DoubleWell ? "double_well" : "moving_contact_line";
}

PotentialValue surface_potential(const SurfacePotentialSpec& spec, double psi) {
    if (spec.kind == SurfaceKind::DoubleWell) return bulk_potential(psi);
    const double c = std::cos(spec.theta_s_deg * kPi / 180.0);
    const double arg = 0.5 * kPi * psi;
    return {-0.5 * spec.gamma_tilde * c * std::sin(arg),
            -0.25 * spec.gamma_tilde * kPi * c * std::cos(arg)};
}

double contact_line_curvature_bound(const SurfacePotentialSpec& spec) {
    if (spec.kind == SurfaceKind::DoubleWell) return 0.0;
    const double c = std::abs(std::cos(spec.theta_s_deg * kPi / 180.0));
    return spec.gamma_tilde * kPi * kPi * c / 8.0;
}

void ModelParams::validate() const {
    require_positive(kappa, "kappa");
    require_positive(gamma1, "gamma1");
    require_positive(gamma2, "gamma2");
    require_positive(S1, "S1");
    require_positive(S2, "S2");
}

double ModelParams::stable_field_bound() const { return std::min(bound_for(S1), bound_for(S2)); }

namespace detail {

void apply_stiffness(const GridSpec& g, double kappa, const double* in, double* out) {
    const int n = g.cells();
    const double k2 = kappa * kappa;
    const long side = n + 1;
    const long count = side * side;
    // Bulk edges: energy k2/2 * c_e * (u_a - u_b)^2 with c_e = 1, or 1/2 on the boundary.
#ifdef PACDYN_HAVE_OPENMP
#pragma omp parallel for schedule(static) if (count > 16384)
#endif
    for (long idx = 0; idx < count; ++idx) {
        const int i = static_cast<int>(idx % side);
        const int j = static_cast<int>(idx / side);
        const double u = in[idx];
        const double cx = (j == 0 || j == n) ? 0.5 : 1.0;
        const double cy = (i == 0 || i == n) ? 0.5 : 1.0;
        double acc = 0.0;
        if (i > 0) acc += cx * (u - in[idx - 1]);
        if (i < n) acc += cx * (u - in[idx + 1]);
        if (j > 0) acc += cy * (u - in[idx - side]);
        if (j < n) acc += cy * (u - in[idx + side]);
        out[idx] = k2 * acc;
    }
    // Chain edges: energy h * k2/2 * ((v_{k+1} - v_k)/h)^2.
    const auto chain = g.chain();
    const std::size_t m = chain.size();
    const double c = k2 / g.spacing();
    for (std::size_t k = 0; k < m; ++k) {
        const double v = in[chain[k]];
        out[chain[k]] += c * (2.0 * v - in[chain[(k + m - 1) % m]] - in[chain[(k + 1) % m]]);
    }
}

} // namespace detail

Energy discrete_energy(const GridSpec& g, const ModelParams& p, const SurfacePotentialSpec& s,
                       const Field& u) {
    g.check(u);
    const int n = g.cells();
    const double k2 = p.kappa * p.kappa;
    const auto w = g.node_weights();

    double grad = 0.0;
    double pot = 0.0;
    for (int j = 0; j <= n; ++j) {
        const double cx = (j == 0 || j == n) ? 0.5 : 1.0;
        for (int i = 0; i <= n; ++i) {
            const std::size_t a = g.node(i, j);
            const double cy = (i == 0 || i == n) ? 0.5 : 1.0;
            if (i < n) {
                const double d = u[g.node(i + 1, j)] - u[a];
                grad += cx * d * d;
            }
            if (j < n) {
                const double d = u[g.node(i, j + 1)] - u[a];
                grad += cy * d * d;
            }
            pot += w[a] * bulk_potential(u[a]).value;
        }
    }
    // Edge weight c_e h^2 times |(du)/h|^2 leaves c_e du^2.
    Energy e;
    e.bulk = 0.5 * k2 * grad + pot;

    const auto chain = g.chain();
    const std::size_t m = chain.size();
    const double h = g.spacing();
    double sgrad = 0.0;
    double spot = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        const double v = u[chain[k]];
        const double d = u[chain[(k + 1) % m]] - v;
        sgrad += d * d;
        spot += surface_potential(s, v).value;
    }
    e.surf = 0.5 * k2 * sgrad / h + h * spot;
    e.total = e.bulk + e.surf;
    return e;
}

Field energy_gradient(const GridSpec& g, const ModelParams& p, const SurfacePotentialSpec& s,
                      const Field& u) {
    g.check(u);
    Field out(g.node_count());
    detail::apply_stiffness(g, p.kappa, u.data(), out.data());
    const auto w = g.node_weights();
    const auto omega = g.unknown_weights();
    const double h = g.spacing();
    for (std::size_t n = 0; n < out.size(); ++n) {
        double d = out[n] + w[n] * bulk_potential(u[n]).derivative;
        if (g.on_boundary(n)) d += h * surface_potential(s, u[n]).derivative;
        out[n] = d / omega[n];
    }
    return out;
}

ChemicalPotentials chemical_potentials(const GridSpec& g, const ModelParams& p,
                                       const SurfacePotentialSpec& s, const Field& u) {
    const Field grad = energy_gradient(g, p, s, u);
    return {restrict_interior(g, grad), trace(g, grad)};
}

SplitEnergy split_energy(const GridSpec& g, const ModelParams& p, const SurfacePotentialSpec& s,
                         const Field& u) {
    g.check(u);
    Field ku(g.node_count());
    detail::apply_stiffness(g, p.kappa, u.data(), ku.data());
    const auto w = g.node_weights();
    const double h = g.spacing();
    const bool dw = s.kind == SurfaceKind::DoubleWell;

    double convex = 0.0;
    double concave = 0.0;
    for (std::size_t n = 0; n < u.size(); ++n) {
        const double x = u[n];
        const double x2 = x * x;
        convex += 0.5 * x * ku[n] + w[n] * (0.5 * p.S1 * x2 + 0.25);
        concave += w[n] * (0.5 * (p.S1 + 1.0) * x2 - 0.25 * x2 * x2);
        if (g.on_boundary(n)) {
            if (dw) {
                convex += h * (0.5 * p.S2 * x2 + 0.25);
                concave += h * (0.5 * (p.S2 + 1.0) * x2 - 0.25 * x2 * x2);
            } else {
                convex += h * 0.5 * p.S2 * x2;
                concave += h * (0.5 * p.S2 * x2 - surface_potential(s, x).value);
            }
        }
    }
    return {convex, concave};
}

Field apply_implicit_part(const GridSpec& g, const ModelParams& p, const Field& x) {
    g.check(x);
    Field out(g.node_count());
    detail::apply_stiffness(g, p.kappa, x.data(), out.data());
    const auto w = g.node_weights();
    const auto omega = g.unknown_weights();
    const double h = g.spacing();
    for (std::size_t n = 0; n < out.size(); ++n) {
        double d = out[n] + w[n] * p.S1 * x[n];
        if (g.on_boundary(n)) d += h * p.S2 * x[n];
        out[n] = d / omega[n];
    }
    return out;
}

Field explicit_part(const GridSpec& g, const ModelParams& p, const SurfacePotentialSpec& s,
                    const Field& x) {
    g.check(x);
    Field out(g.node_count());
    const auto w = g.node_weights();
    const auto omega = g.unknown_weights();
    const double h = g.spacing();
    const bool dw = s.kind == SurfaceKind::DoubleWell;
    for (std::size_t n = 0; n < out.size(); ++n) {
        const double v = x[n];
        double d = w[n] * ((p.S1 + 1.0) * v - v * v * v);
        if (g.on_boundary(n)) {
            d += dw ? h * ((p.S2 + 1.0) * v - v * v * v)
                    : h * (p.S2 * v - surface_potential(s, v).derivative);
        }
        out[n] = d / omega[n];
    }
    return out;
}

} // namespace pacdyn
