#include "pacdyn/projection.hpp"

namespace pacdyn {

InteriorField project_bulk(const GridSpec& g, const InteriorField& u) {
    const double mean = bulk_mean(g, u);
    InteriorField out = u;
    for (double& value : out) value -= mean;
    return out;
}

BoundaryField project_boundary(const GridSpec& g, const BoundaryField& v) {
    const double mean = boundary_mean(g, v);
    BoundaryField out = v;
    for (double& value : out) value -= mean;
    return out;
}

void project_combined(const GridSpec& g, Field& x) {
    g.check(x);
    const auto omega = g.unknown_weights();
    double bulk_num = 0.0, bulk_den = 0.0, surf_num = 0.0, surf_den = 0.0;
    for (std::size_t n = 0; n < x.size(); ++n) {
        if (g.on_boundary(n)) {
            surf_num += omega[n] * x[n];
            surf_den += omega[n];
        } else {
            bulk_num += omega[n] * x[n];
            bulk_den += omega[n];
        }
    }
    const double bulk = bulk_num / bulk_den;
    const double surf = surf_num / surf_den;
    for (std::size_t n = 0; n < x.size(); ++n) x[n] -= g.on_boundary(n) ? surf : bulk;
}

double bulk_inner(const GridSpec& g, const InteriorField& a, const InteriorField& b) {
    g.check(a);
    g.check(b);
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return g.interior_weight() * s;
}

double boundary_inner(const GridSpec& g, const BoundaryField& a, const BoundaryField& b) {
    g.check(a);
    g.check(b);
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return g.chain_weight() * s;
}

} // namespace pacdyn
