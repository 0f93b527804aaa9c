#include "pacdyn/grid.hpp"

#include <cmath>
#include <string>

namespace pacdyn {

namespace {

[[noreturn]] void size_mismatch(const char* what, std::size_t got, std::size_t want) {
    throw DimensionError(std::string(what) + ": expected " + std::to_string(want) +
                         " values, got " + std::to_string(got));
}

} // namespace

GridSpec::GridSpec(int cells) : n_(cells), h_(0.0) {
    if (cells < 4) {
        throw InvalidGridError("grid needs N >= 4 cells per side, got " + std::to_string(cells));
    }
    h_ = 1.0 / n_;
    const std::size_t side = static_cast<std::size_t>(n_ + 1);
    const std::size_t count = side * side;

    chain_.reserve(4 * static_cast<std::size_t>(n_));
    for (int i = 0; i <= n_; ++i) chain_.push_back(node(i, 0));
    for (int j = 1; j <= n_; ++j) chain_.push_back(node(n_, j));
    for (int i = n_ - 1; i >= 0; --i) chain_.push_back(node(i, n_));
    for (int j = n_ - 1; j >= 1; --j) chain_.push_back(node(0, j));

    chain_pos_.assign(count, -1);
    for (std::size_t k = 0; k < chain_.size(); ++k) chain_pos_[chain_[k]] = static_cast<int>(k);

    interior_pos_.assign(count, -1);
    interior_.reserve(static_cast<std::size_t>(n_ - 1) * static_cast<std::size_t>(n_ - 1));
    for (int j = 1; j < n_; ++j) {
        for (int i = 1; i < n_; ++i) {
            interior_pos_[node(i, j)] = static_cast<int>(interior_.size());
            interior_.push_back(node(i, j));
        }
    }

    node_weights_.resize(count);
    unknown_weights_.resize(count);
    for (int j = 0; j <= n_; ++j) {
        for (int i = 0; i <= n_; ++i) {
            const double wx = (i == 0 || i == n_) ? 0.5 * h_ : h_;
            const double wy = (j == 0 || j == n_) ? 0.5 * h_ : h_;
            const std::size_t n = node(i, j);
            node_weights_[n] = wx * wy;
            unknown_weights_[n] = chain_pos_[n] >= 0 ? h_ : h_ * h_;
        }
    }
}

double GridSpec::edge_factor(std::size_t a, std::size_t b) const noexcept {
    // Horizontal edges on rows 0 and N, vertical edges on columns 0 and N lie on the boundary.
    if (row(a) == row(b)) {
        const int j = row(a);
        return (j == 0 || j == n_) ? 0.5 : 1.0;
    }
    const int i = column(a);
    return (i == 0 || i == n_) ? 0.5 : 1.0;
}

void GridSpec::check(const Field& u) const {
    if (u.size() != node_count()) size_mismatch("field", u.size(), node_count());
}

void GridSpec::check(const BoundaryField& v) const {
    if (v.size() != chain_length()) size_mismatch("boundary field", v.size(), chain_length());
}

void GridSpec::check(const InteriorField& v) const {
    if (v.size() != interior_count()) size_mismatch("interior field", v.size(), interior_count());
}

GridSpec build_grid(int cells) { return GridSpec(cells); }

InteriorField laplacian_bulk(const GridSpec& g, const Field& u) {
    g.check(u);
    const double inv_h2 = 1.0 / (g.spacing() * g.spacing());
    const std::size_t stride = static_cast<std::size_t>(g.nodes_per_side());
    InteriorField out(g.interior_count());
    const auto nodes = g.interior_nodes();
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        const std::size_t n = nodes[k];
        out[k] = (u[n + 1] + u[n - 1] + u[n + stride] + u[n - stride] - 4.0 * u[n]) * inv_h2;
    }
    return out;
}

BoundaryField laplacian_boundary(const GridSpec& g, const BoundaryField& v) {
    g.check(v);
    const double inv_h2 = 1.0 / (g.spacing() * g.spacing());
    const std::size_t m = v.size();
    BoundaryField out(m);
    for (std::size_t k = 0; k < m; ++k) {
        const double prev = v[(k + m - 1) % m];
        const double next = v[(k + 1) % m];
        out[k] = (next + prev - 2.0 * v[k]) * inv_h2;
    }
    return out;
}

BoundaryField normal_derivative(const GridSpec& g, const Field& u) {
    g.check(u);
    const int n = g.cells();
    const double h = g.spacing();
    // Outward derivative from samples u0 (on the edge), u1, u2 stepping inward.
    auto one_sided = [h](double u0, double u1, double u2) { return (3.0 * u0 - 4.0 * u1 + u2) / (2.0 * h); };
    auto along_x = [&](int i, int j) {
        const int s = (i == 0) ? 1 : -1;
        return one_sided(u[g.node(i, j)], u[g.node(i + s, j)], u[g.node(i + 2 * s, j)]);
    };
    auto along_y = [&](int i, int j) {
        const int s = (j == 0) ? 1 : -1;
        return one_sided(u[g.node(i, j)], u[g.node(i, j + s)], u[g.node(i, j + 2 * s)]);
    };

    BoundaryField out(g.chain_length());
    const auto chain = g.chain();
    for (std::size_t k = 0; k < chain.size(); ++k) {
        const int i = g.column(chain[k]);
        const int j = g.row(chain[k]);
        const bool x_edge = (i == 0 || i == n);
        const bool y_edge = (j == 0 || j == n);
        if (x_edge && y_edge) {
            out[k] = 0.5 * (along_x(i, j) + along_y(i, j));
        } else if (x_edge) {
            out[k] = along_x(i, j);
        } else {
            out[k] = along_y(i, j);
        }
    }
    return out;
}

BoundaryField trace(const GridSpec& g, const Field& u) {
    g.check(u);
    BoundaryField v(g.chain_length());
    const auto chain = g.chain();
    for (std::size_t k = 0; k < chain.size(); ++k) v[k] = u[chain[k]];
    return v;
}

Field inject(const GridSpec& g, Field u, const BoundaryField& v) {
    g.check(u);
    g.check(v);
    const auto chain = g.chain();
    for (std::size_t k = 0; k < chain.size(); ++k) u[chain[k]] = v[k];
    return u;
}

InteriorField restrict_interior(const GridSpec& g, const Field& u) {
    g.check(u);
    InteriorField out(g.interior_count());
    const auto nodes = g.interior_nodes();
    for (std::size_t k = 0; k < nodes.size(); ++k) out[k] = u[nodes[k]];
    return out;
}

Field combine(const GridSpec& g, const InteriorField& interior, const BoundaryField& boundary) {
    g.check(interior);
    Field u(g.node_count());
    const auto nodes = g.interior_nodes();
    for (std::size_t k = 0; k < nodes.size(); ++k) u[nodes[k]] = interior[k];
    return inject(g, std::move(u), boundary);
}

double bulk_mean(const GridSpec& g, const InteriorField& u) {
    g.check(u);
    const double w = g.interior_weight();
    double num = 0.0;
    double den = 0.0;
    for (double value : u) {
        num += w * value;
        den += w;
    }
    return num / den;
}

double boundary_mean(const GridSpec& g, const BoundaryField& v) {
    g.check(v);
    // Sum of weights is |Gamma| = 4 up to rounding; dividing by the computed
    // sum keeps the mean exactly consistent with the chain projection.
    double num = 0.0;
    double den = 0.0;
    for (double value : v) {
        num += g.chain_weight() * value;
        den += g.chain_weight();
    }
    return num / den;
}

double bulk_mean(const GridSpec& g, const Field& u) { return bulk_mean(g, restrict_interior(g, u)); }

double boundary_mean(const GridSpec& g, const Field& u) { return boundary_mean(g, trace(g, u)); }

} // namespace pacdyn
