#pragma once

#include "purcellkit/core.hpp"

// Vertical confinement step of the dimensional reduction: guided solutions
// of the three-layer (possibly asymmetric) slab dispersion relation.

namespace purcellkit::wgm {

struct SlabSolution {
    double effective_index = 0.0;  // n_eff, between max cladding index and core index
    Polarization polarization = Polarization::TE;
    int slab_order = 0;
};

// Residual of the transcendental dispersion relation at a trial n_eff;
// strictly decreasing in n_eff, zero at the guided solution.
double slab_dispersion_residual(const RingGeometry& geometry, double wavelength_nm,
                                Polarization pol, int slab_order, double n_eff);

// Fundamental (or requested order) guided solution; residual of the returned
// root is below 1e-12. Throws std::runtime_error when the slab is below
// cutoff for the requested order.
SlabSolution solve_slab(const RingGeometry& geometry, double wavelength_nm,
                        Polarization pol, int slab_order = 0);

// Closed-form vertical energy integrals of the slab profile, used by the
// mode-volume quadrature. eps_weighted applies the local permittivity,
// unweighted does not (columns where the core is absent).
struct SlabProfileIntegrals {
    double eps_weighted = 0.0;  // integral of eps(z) |g(z)|^2 dz over the slab column
    double unweighted = 0.0;    // integral of |g(z)|^2 dz, vacuum-permittivity column
};

SlabProfileIntegrals slab_profile_integrals(const RingGeometry& geometry,
                                            double wavelength_nm, const SlabSolution& slab);

}  // namespace purcellkit::wgm
