#pragma once

#include <span>
#include <vector>

#include "pacdyn/grid.hpp"
#include "pacdyn/model.hpp"
#include "pacdyn/stepper.hpp"

namespace pacdyn {

struct DiagRecord {
    long step = 0;
    double time = 0.0;
    double mass_bulk = 0.0;  // weighted interior mean of phi
    double mass_surf = 0.0;  // chain mean of psi
    double energy_bulk = 0.0;
    double energy_surf = 0.0;
    double energy_total = 0.0;
    double steady_residual = 0.0;
    int solver_iterations = 0;
};

DiagRecord record(const RunState& state, const GridSpec& g, const ModelParams& p,
                  const SurfacePotentialSpec& s, int solver_iterations = 0);

/// Slack used by the decay audit: E_next may exceed E_prev by at most
/// 1e-10 * (1 + |E_prev|).
inline constexpr double kEnergySlack = 1e-10;

/// Indices k >= 1 with energies[k] > energies[k-1] + slack. Empty means the
/// series is non-increasing.
std::vector<std::size_t> audit_energy_decay(std::span<const double> energies);

/// Step numbers of the records whose total energy rose above the previous one.
std::vector<long> audit_energy_decay(std::span<const DiagRecord> series);

struct MassDrift {
    double bulk = 0.0;  // max |mass_bulk(k) - mass_bulk(0)|
    double surf = 0.0;
};

MassDrift mass_drift(std::span<const DiagRecord> series);

struct RadiusStats {
    double mean_radius = 0.0;
    double max_deviation = 0.0;    // max |r - mean|, length units
    double deviation_in_h = 0.0;   // max_deviation / h
    std::size_t crossings = 0;
};

/// Circularity of the zero level set: phi = 0 crossings located by linear
/// interpolation along every grid row and column, distances measured to
/// `center`. Throws MetricUndefinedError if there is no sign change.
RadiusStats zero_level_radius_stats(const GridSpec& g, const Field& u, double cx = 0.5,
                                    double cy = 0.5);

/// Contact angle (degrees, measured through the phi > 0 phase) of the
/// zero contour at the bottom wall: a least-squares line through the
/// crossings on rows y = h .. 5h. Averages the left and right contact lines
/// when both exist. Throws MetricUndefinedError if the contour misses the wall.
double contact_angle(const GridSpec& g, const Field& u);

/// Distance between the outermost phi = 0 crossings on the row y = h.
double droplet_base_width(const GridSpec& g, const Field& u);

struct ChemicalPotentialSpread {
    double bulk_stddev = 0.0;  // weighted standard deviation of mu over interior nodes
    double surf_stddev = 0.0;  // of mu_Gamma over the chain
};

ChemicalPotentialSpread chemical_potential_spread(const GridSpec& g, const ModelParams& p,
                                                  const SurfacePotentialSpec& s, const Field& u);

} // namespace pacdyn
