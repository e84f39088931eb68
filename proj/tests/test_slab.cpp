#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "purcellkit/slab.hpp"

using namespace purcellkit;
using namespace purcellkit::wgm;

namespace {

RingGeometry paper_ring() {
    RingGeometry g;
    g.outer_diameter_um = 4.8;
    g.ring_width_um = 0.7;
    g.membrane_thickness_um = 0.28;
    g.core_index = 2.4;
    g.cladding_index_top = 1.0;
    g.cladding_index_bottom = 1.0;
    return g;
}

}  // namespace

TEST_CASE("fundamental solutions match the scan-and-bisect oracle") {
    // frozen from an independent dense-scan + bisection evaluation of the
    // same dispersion relation (scipy-based, tolerance 1e-10)
    const RingGeometry g = paper_ring();
    const SlabSolution te = solve_slab(g, 637.0, Polarization::TE);
    CHECK(std::abs(te.effective_index - 2.2450778133249845) <= 1e-10);
    CHECK(te.effective_index > 1.0);
    CHECK(te.effective_index < 2.4);
    const SlabSolution tm = solve_slab(g, 637.0, Polarization::TM);
    CHECK(std::abs(tm.effective_index - 2.149664306926634) <= 1e-10);
}

TEST_CASE("residual at the root is tiny") {
    const RingGeometry g = paper_ring();
    for (auto pol : {Polarization::TE, Polarization::TM}) {
        const SlabSolution s = solve_slab(g, 637.0, pol);
        CHECK(std::abs(slab_dispersion_residual(g, 637.0, pol, 0, s.effective_index)) <= 1e-12);
    }
}

TEST_CASE("thick-membrane limit approaches the core index") {
    RingGeometry g = paper_ring();
    g.membrane_thickness_um = 10.0;
    const SlabSolution s = solve_slab(g, 637.0, Polarization::TE);
    CHECK(g.core_index - s.effective_index < 1e-3);
    CHECK(s.effective_index < g.core_index);
}

TEST_CASE("no confinement when core equals cladding") {
    RingGeometry g = paper_ring();
    g.core_index = 1.0;
    CHECK_THROWS_AS(solve_slab(g, 637.0, Polarization::TE), std::runtime_error);
}

TEST_CASE("higher orders hit cutoff") {
    // 280 nm diamond membrane guides a few orders at 637 nm but not order 9
    const RingGeometry g = paper_ring();
    CHECK_THROWS_AS(solve_slab(g, 637.0, Polarization::TE, 9), std::runtime_error);
}

TEST_CASE("n_eff grows monotonically with thickness") {
    RingGeometry g = paper_ring();
    double last = 1.0;
    for (double t = 0.1; t <= 2.0; t += 0.1) {
        g.membrane_thickness_um = t;
        const double n = solve_slab(g, 637.0, Polarization::TE).effective_index;
        CHECK(n > last);
        last = n;
    }
}

TEST_CASE("asymmetric cladding shifts the solution") {
    RingGeometry g = paper_ring();
    g.cladding_index_bottom = 1.45;  // oxide pedestal variant
    const double asym = solve_slab(g, 637.0, Polarization::TE).effective_index;
    const double sym = solve_slab(paper_ring(), 637.0, Polarization::TE).effective_index;
    CHECK(asym > sym);
    CHECK(asym < g.core_index);
}

TEST_CASE("profile integrals are positive and bounded by the slab extent") {
    const RingGeometry g = paper_ring();
    for (auto pol : {Polarization::TE, Polarization::TM}) {
        const SlabSolution s = solve_slab(g, 637.0, pol);
        const SlabProfileIntegrals w = slab_profile_integrals(g, 637.0, s);
        CHECK(w.unweighted > 0.0);
        CHECK(w.eps_weighted > w.unweighted);  // core permittivity dominates
        CHECK(w.eps_weighted < g.core_index * g.core_index *
                                    (g.membrane_thickness_um + 2.0));
    }
}
