#pragma once

#include <utility>
#include <vector>

#include "purcellkit/core.hpp"
#include "purcellkit/slab.hpp"

// Approximate whispering-gallery-mode solver. The 3D ring is reduced to a
// vertical slab (effective index) times a 2D annular radial problem solved
// with cylinder functions: interior J matched to a decaying exterior Y at
// the ring boundaries. The annulus is treated as a disk of the outer radius
// when the inner boundary lies in the evanescent shadow below the caustic
// radius m/(n_eff k0), otherwise full two-boundary matching is used.
//
// Polarization enters twice: through the slab n_eff, and through the radial
// interface weights (TE matches the out-of-plane H field with 1/n^2 weighted
// derivatives, TM matches the out-of-plane E field with plain continuity).
// The lateral exterior uses max(cladding indices) as its effective index.
//
// Q is never computed here (radiation/roughness losses are inputs, not
// predictions); callers supply the Q assigned to found modes.

namespace purcellkit::wgm {

// Radial profile of a mode on the solver grid, normalized to max |amplitude| = 1.
struct RadialField {
    std::vector<double> radius_grid_um;  // strictly increasing
    std::vector<double> amplitude;      // same length
    CavityMode mode{};
};

// Normalized residual of the radial characteristic equation at a trial
// wavelength; zero at a resonance, magnitude <= 1 by construction.
double radial_characteristic(const RingGeometry& geometry, double wavelength_nm,
                             int azimuthal_number, Polarization pol);

// All resonances with wavelength inside band_nm, sorted by wavelength.
// Roots are refined until the characteristic residual is below 1e-9.
// assigned_q fills each mode's quality_factor (a measured input, not a
// prediction). An empty band yields an empty list.
std::vector<CavityMode> find_resonances(const RingGeometry& geometry,
                                        std::pair<double, double> band_nm,
                                        Polarization pol, double assigned_q = 4000.0);

// Radial profile of the (m, pol) mode at the given wavelength on a uniform
// grid reaching the exterior caustic.
RadialField radial_field(const RingGeometry& geometry, double wavelength_nm,
                         int azimuthal_number, Polarization pol, int n_points = 1201);

// Eq.-style mode volume: integral of eps |E|^2 over space divided by its
// maximum, with the 2D field extended vertically by the slab profile.
// Returns V in (lambda/n_core)^3 units (traveling-wave normalization; the
// standing-wave value is half). Throws when trapezoid refinement between
// half- and full-resolution grids disagrees by more than 1%.
double mode_volume(const RadialField& field, const RingGeometry& geometry);

}  // namespace purcellkit::wgm
