#include "purcellkit/slab.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace purcellkit::wgm {
namespace {

constexpr double kPi = 3.14159265358979323846;

struct SlabParams {
    double k0 = 0.0;      // rad/um
    double kappa = 0.0;   // transverse wavenumber in the core
    double gamma_t = 0.0; // decay constant, top cladding
    double gamma_b = 0.0; // decay constant, bottom cladding
};

SlabParams slab_params(const RingGeometry& g, double wavelength_nm, double n_eff) {
    SlabParams p;
    p.k0 = 2.0 * kPi / (wavelength_nm * 1e-3);
    p.kappa = p.k0 * std::sqrt(std::max(g.core_index * g.core_index - n_eff * n_eff, 0.0));
    p.gamma_t = p.k0 * std::sqrt(std::max(n_eff * n_eff - g.cladding_index_top * g.cladding_index_top, 0.0));
    p.gamma_b = p.k0 * std::sqrt(std::max(n_eff * n_eff - g.cladding_index_bottom * g.cladding_index_bottom, 0.0));
    return p;
}

}  // namespace

double slab_dispersion_residual(const RingGeometry& g, double wavelength_nm,
                                Polarization pol, int slab_order, double n_eff) {
    const SlabParams p = slab_params(g, wavelength_nm, n_eff);
    if (p.kappa == 0.0) return -1e300;
    double phase_t, phase_b;
    if (pol == Polarization::TE) {
        phase_t = std::atan(p.gamma_t / p.kappa);
        phase_b = std::atan(p.gamma_b / p.kappa);
    } else {
        const double nc2 = g.core_index * g.core_index;
        phase_t = std::atan(nc2 * p.gamma_t /
                            (g.cladding_index_top * g.cladding_index_top * p.kappa));
        phase_b = std::atan(nc2 * p.gamma_b /
                            (g.cladding_index_bottom * g.cladding_index_bottom * p.kappa));
    }
    return p.kappa * g.membrane_thickness_um - slab_order * kPi - phase_t - phase_b;
}

SlabSolution solve_slab(const RingGeometry& geometry, double wavelength_nm,
                        Polarization pol, int slab_order) {
    if (!(wavelength_nm > 0.0)) throw std::invalid_argument("solve_slab: wavelength_nm must be > 0");
    const double lo = std::max(geometry.cladding_index_top, geometry.cladding_index_bottom);
    const double hi = geometry.core_index;
    if (!(hi > lo))
        throw std::runtime_error("solve_slab: no guided mode (core index does not exceed cladding)");

    // The residual decreases strictly with n_eff: positive at the cladding
    // light line means the requested order is guided.
    double a = lo + 1e-12, b = hi - 1e-12;
    double fa = slab_dispersion_residual(geometry, wavelength_nm, pol, slab_order, a);
    if (fa <= 0.0)
        throw std::runtime_error("solve_slab: no guided mode (slab below cutoff for requested order)");
    for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
        const double mid = 0.5 * (a + b);
        const double fm = slab_dispersion_residual(geometry, wavelength_nm, pol, slab_order, mid);
        if (fa * fm <= 0.0) {
            b = mid;
        } else {
            a = mid;
            fa = fm;
        }
    }
    return SlabSolution{0.5 * (a + b), pol, slab_order};
}

SlabProfileIntegrals slab_profile_integrals(const RingGeometry& g, double wavelength_nm,
                                            const SlabSolution& slab) {
    const SlabParams p = slab_params(g, wavelength_nm, slab.effective_index);
    const double t = g.membrane_thickness_um;
    const double nc2 = g.core_index * g.core_index;
    const double nt2 = g.cladding_index_top * g.cladding_index_top;
    const double nb2 = g.cladding_index_bottom * g.cladding_index_bottom;

    // Profile cos(kappa z - phi) on [0, t]; phi from the bottom-interface
    // matching, polarization-consistent weights.
    double phi;
    if (slab.polarization == Polarization::TE) {
        phi = std::atan(p.gamma_b / p.kappa);
    } else {
        phi = std::atan(nc2 * p.gamma_b / (nb2 * p.kappa));
    }
    const double core_int =
        0.5 * t + (std::sin(2.0 * (p.kappa * t - phi)) + std::sin(2.0 * phi)) / (4.0 * p.kappa);
    const double amp_b2 = std::cos(phi) * std::cos(phi);
    const double amp_t2 = std::cos(p.kappa * t - phi) * std::cos(p.kappa * t - phi);
    const double tail_b = amp_b2 / (2.0 * p.gamma_b);
    const double tail_t = amp_t2 / (2.0 * p.gamma_t);

    SlabProfileIntegrals out;
    out.eps_weighted = nc2 * core_int + nb2 * tail_b + nt2 * tail_t;
    out.unweighted = core_int + tail_b + tail_t;
    return out;
}

}  // namespace purcellkit::wgm
