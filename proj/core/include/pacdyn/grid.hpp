#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pacdyn/error.hpp"

namespace pacdyn {

/// Nodal array tagged by the node set it lives on, so that bulk, boundary
/// and interior data cannot be mixed up by accident.
template <class Tag>
class NodalArray {
public:
    NodalArray() = default;
    explicit NodalArray(std::size_t n, double value = 0.0) : values_(n, value) {}
    explicit NodalArray(std::vector<double> values) : values_(std::move(values)) {}

    std::size_t size() const noexcept { return values_.size(); }
    double& operator[](std::size_t k) { return values_[k]; }
    double operator[](std::size_t k) const { return values_[k]; }

    double* data() noexcept { return values_.data(); }
    const double* data() const noexcept { return values_.data(); }
    std::span<double> span() noexcept { return values_; }
    std::span<const double> span() const noexcept { return values_; }
    const std::vector<double>& values() const noexcept { return values_; }

    auto begin() noexcept { return values_.begin(); }
    auto end() noexcept { return values_.end(); }
    auto begin() const noexcept { return values_.begin(); }
    auto end() const noexcept { return values_.end(); }

    friend bool operator==(const NodalArray&, const NodalArray&) = default;

private:
    std::vector<double> values_;
};

struct AllNodesTag {};
struct ChainTag {};
struct InteriorTag {};

/// Order parameter on every vertex of the (N+1)^2 grid, row-major (index j*(N+1)+i).
using Field = NodalArray<AllNodesTag>;
/// Values on the 4N perimeter nodes in chain order.
using BoundaryField = NodalArray<ChainTag>;
/// Values on the (N-1)^2 interior nodes, row-major.
using InteriorField = NodalArray<InteriorTag>;

/// Vertex-centred discretization of the unit square [0,1]^2.
///
/// The boundary chain visits the 4N perimeter nodes counterclockwise starting
/// at (0,0): bottom edge left to right, right edge upward, top edge right to
/// left, left edge downward. Bulk nodes carry trapezoidal weights (h^2, h^2/2
/// on edges, h^2/4 at corners); chain nodes carry weight h.
///
/// The combined unknown space used by the time stepper is the full nodal
/// array: interior nodes hold bulk unknowns, perimeter nodes hold the trace.
/// unknown_weights() gives the matching inner-product weights
/// (h^2 on the interior, h on the chain).
class GridSpec {
public:
    explicit GridSpec(int cells);

    int cells() const noexcept { return n_; }
    double spacing() const noexcept { return h_; }
    int nodes_per_side() const noexcept { return n_ + 1; }
    std::size_t node_count() const noexcept { return node_weights_.size(); }
    std::size_t interior_count() const noexcept { return interior_.size(); }
    std::size_t chain_length() const noexcept { return chain_.size(); }

    std::size_t node(int i, int j) const noexcept {
        return static_cast<std::size_t>(j) * static_cast<std::size_t>(n_ + 1) +
               static_cast<std::size_t>(i);
    }
    int column(std::size_t node) const noexcept { return static_cast<int>(node % (n_ + 1)); }
    int row(std::size_t node) const noexcept { return static_cast<int>(node / (n_ + 1)); }
    double x(std::size_t node) const noexcept { return column(node) * h_; }
    double y(std::size_t node) const noexcept { return row(node) * h_; }

    bool on_boundary(std::size_t node) const noexcept { return chain_pos_[node] >= 0; }
    /// Position of a perimeter node in the chain, -1 for interior nodes.
    int chain_position(std::size_t node) const noexcept { return chain_pos_[node]; }
    /// Position of an interior node in the interior ordering, -1 on the perimeter.
    int interior_position(std::size_t node) const noexcept { return interior_pos_[node]; }

    std::span<const std::size_t> chain() const noexcept { return chain_; }
    std::span<const std::size_t> interior_nodes() const noexcept { return interior_; }

    /// Trapezoidal bulk quadrature weights; they sum to |Omega| = 1.
    std::span<const double> node_weights() const noexcept { return node_weights_; }
    /// Inner-product weights of the combined (interior + chain) space.
    std::span<const double> unknown_weights() const noexcept { return unknown_weights_; }
    double interior_weight() const noexcept { return h_ * h_; }
    double chain_weight() const noexcept { return h_; }

    /// Relative weight (1 or 1/2) of the bulk edge between two lattice
    /// neighbours; edges lying on the boundary carry half weight.
    double edge_factor(std::size_t a, std::size_t b) const noexcept;

    void check(const Field& u) const;
    void check(const BoundaryField& v) const;
    void check(const InteriorField& v) const;

private:
    int n_;
    double h_;
    std::vector<std::size_t> chain_;
    std::vector<std::size_t> interior_;
    std::vector<int> chain_pos_;
    std::vector<int> interior_pos_;
    std::vector<double> node_weights_;
    std::vector<double> unknown_weights_;
};

/// Throws InvalidGridError for N < 4.
GridSpec build_grid(int cells);

/// Five-point Laplacian at every interior node; perimeter values act as
/// stencil neighbours.
InteriorField laplacian_bulk(const GridSpec& g, const Field& u);

/// Cyclic second difference along the boundary chain (corners are ordinary
/// chain nodes).
BoundaryField laplacian_boundary(const GridSpec& g, const BoundaryField& v);

/// Outward normal derivative from a second-order one-sided difference.
/// Corners take the average of the two edge-normal values. Diagnostic only.
BoundaryField normal_derivative(const GridSpec& g, const Field& u);

BoundaryField trace(const GridSpec& g, const Field& u);
Field inject(const GridSpec& g, Field u, const BoundaryField& v);

InteriorField restrict_interior(const GridSpec& g, const Field& u);
/// Builds the full nodal field from its interior block and its trace.
Field combine(const GridSpec& g, const InteriorField& interior, const BoundaryField& boundary);

double bulk_mean(const GridSpec& g, const InteriorField& u);
double boundary_mean(const GridSpec& g, const BoundaryField& v);

/// Weighted interior mean of a full field (the conserved bulk mass).
double bulk_mean(const GridSpec& g, const Field& u);
/// Chain mean of the trace of a full field (the conserved surface mass).
double boundary_mean(const GridSpec& g, const Field& u);

} // namespace pacdyn
