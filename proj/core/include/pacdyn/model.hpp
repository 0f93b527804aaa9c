#pragma once

#include <string>

#include "pacdyn/grid.hpp"

namespace pacdyn {

struct PotentialValue {
    double value;       // F or G
    double derivative;  // f or g
};

/// F(phi) = (phi^2 - 1)^2 / 4, f = phi^3 - phi.
PotentialValue bulk_potential(double phi);

enum class SurfaceKind { DoubleWell, MovingContactLine };

struct SurfacePotentialSpec {
    SurfaceKind kind = SurfaceKind::DoubleWell;
    double theta_s_deg = 90.0;  // static contact angle (moving contact line only)
    double gamma_tilde = 1.0;   // surface-tension scale (moving contact line only)

    static SurfacePotentialSpec double_well() { return {}; }
    static SurfacePotentialSpec moving_contact_line(double theta_s_deg, double gamma_tilde = 1.0) {
        return {SurfaceKind::MovingContactLine, theta_s_deg, gamma_tilde};
    }

    /// Throws ConfigError unless 0 < theta_s < 180 and gamma_tilde > 0.
    void validate() const;
    /// "double_well" or "moving_contact_line".
    std::string name() const;
};

/// Double well: G = (psi^2-1)^2/4.
/// Moving contact line: G = -(gamma_tilde/2) cos(theta_s) sin(pi psi / 2).
PotentialValue surface_potential(const SurfacePotentialSpec& spec, double psi);

/// Upper bound of |G''| for the moving contact line potential.
double contact_line_curvature_bound(const SurfacePotentialSpec& spec);

struct ModelParams {
    double kappa = 0.01;
    double gamma1 = 100.0;
    double gamma2 = 100.0;
    double S1 = 100.0;
    double S2 = 100.0;

    void validate() const;

    /// Largest M with S >= (3M^2 - 1)/2 for both stabilization constants:
    /// the convex-splitting step is energy stable while |u| stays below it.
    double stable_field_bound() const;
};

struct Energy {
    double bulk = 0.0;
    double surf = 0.0;
    double total = 0.0;
};

/// Discrete free energy: forward-difference edge gradients with trapezoidal
/// edge/node weights in the bulk, chain differences with weight h on the
/// boundary, psi = trace(u).
Energy discrete_energy(const GridSpec& g, const ModelParams& p, const SurfacePotentialSpec& s,
                       const Field& u);

struct ChemicalPotentials {
    InteriorField mu;
    BoundaryField mu_gamma;
};

/// Weighted gradient of discrete_energy over the combined space:
/// entry n is dE/du_n divided by unknown_weights()[n]. Interior entries are
/// mu = -kappa^2 Lap u + f(u); perimeter entries are mu_Gamma, where the
/// kappa^2 d_n phi coupling comes from the bulk edges touching the boundary.
Field energy_gradient(const GridSpec& g, const ModelParams& p, const SurfacePotentialSpec& s,
                      const Field& u);

ChemicalPotentials chemical_potentials(const GridSpec& g, const ModelParams& p,
                                       const SurfacePotentialSpec& s, const Field& u);

/// Convex splitting E = E_c - E_e.
struct SplitEnergy {
    double convex = 0.0;   // E_c
    double concave = 0.0;  // E_e
};

SplitEnergy split_energy(const GridSpec& g, const ModelParams& p, const SurfacePotentialSpec& s,
                         const Field& u);

/// Implicit operator A_c: weighted gradient of the quadratic part of E_c,
/// i.e. (S - kappa^2 Lap) including the bulk/boundary coupling through
/// shared edges. Linear, self-adjoint and positive in the unknown-weight
/// inner product.
Field apply_implicit_part(const GridSpec& g, const ModelParams& p, const Field& x);

/// Explicit part e(x): weighted gradient of E_e. A_c(u) - e(u) equals
/// energy_gradient(u) exactly.
Field explicit_part(const GridSpec& g, const ModelParams& p, const SurfacePotentialSpec& s,
                    const Field& x);

namespace detail {

/// out_n = dE_grad/du_n for the quadratic gradient energy (bulk edges plus
/// chain edges); no division by weights.
void apply_stiffness(const GridSpec& g, double kappa, const double* in, double* out);

} // namespace detail

} // namespace pacdyn
