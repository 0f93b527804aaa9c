#pragma once

#include "pacdyn/grid.hpp"

namespace pacdyn {

/// Orthogonal projection onto zero-mean interior fields: u - bulk_mean(u).
InteriorField project_bulk(const GridSpec& g, const InteriorField& u);

/// Orthogonal projection onto zero-mean chain fields: v - boundary_mean(v).
BoundaryField project_boundary(const GridSpec& g, const BoundaryField& v);

/// Applies both projections blockwise to a combined field in place
/// (interior block with the bulk weights, perimeter block with the chain weights).
void project_combined(const GridSpec& g, Field& x);

/// Weighted inner products matching the two projections.
double bulk_inner(const GridSpec& g, const InteriorField& a, const InteriorField& b);
double boundary_inner(const GridSpec& g, const BoundaryField& a, const BoundaryField& b);

} // namespace pacdyn
