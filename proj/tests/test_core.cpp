#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "purcellkit/core.hpp"
#include "purcellkit/io.hpp"

using namespace purcellkit;

namespace {

EmitterTransition nv_like() {
    EmitterTransition e;
    e.wavelength_nm = 637.0;
    e.bulk_lifetime_ns = 11.1;
    e.zpl_branching_ratio = 0.03;
    e.leak_ratio = 1.0;
    e.geometry.overlap_eta = 1.0;
    return e;
}

}  // namespace

TEST_CASE("transition validation") {
    EmitterTransition e = nv_like();
    CHECK(!validate(e));

    e.zpl_branching_ratio = 0.0;
    REQUIRE(validate(e));
    CHECK(validate(e)->find("zpl_branching_ratio") != std::string::npos);

    e = nv_like();
    e.geometry.overlap_eta = 1.5;
    REQUIRE(validate(e));
    CHECK(validate(e)->find("overlap_eta") != std::string::npos);

    e = nv_like();
    e.bulk_lifetime_ns = -2.0;
    CHECK(validate(e));
}

TEST_CASE("mode and geometry validation") {
    CavityMode m;
    m.wavelength_nm = 637.0;
    m.quality_factor = 3800.0;
    m.mode_volume_cubic_lambda_over_n = 17.0;
    m.azimuthal_number = 46;
    m.radial_number = 1;
    CHECK(!validate(m));
    m.radial_number = 0;
    CHECK(validate(m));

    RingGeometry g;
    g.outer_diameter_um = 4.8;
    g.ring_width_um = 0.7;
    g.membrane_thickness_um = 0.28;
    g.core_index = 2.4;
    CHECK(!validate(g));
    CHECK(g.outer_radius_um() == 2.4);
    CHECK(g.inner_radius_um() == doctest::Approx(1.7));
    g.ring_width_um = 2.5;
    CHECK(validate(g));
    g = RingGeometry{4.8, 0.7, 0.28, 1.0, 1.0, 1.0};
    CHECK(validate(g));
}

TEST_CASE("decay model at F = 0 reproduces the bulk rate") {
    for (double tau0 : {0.37, 11.1, 42.0, 913.0}) {
        for (double xi : {0.024, 0.03, 0.05, 0.5}) {
            EmitterTransition e = nv_like();
            e.bulk_lifetime_ns = tau0;
            e.zpl_branching_ratio = xi;
            const DecayModel model = make_decay_model(e, 0.0);
            CHECK(std::abs(total_rate_per_ns(model) - 1.0 / tau0) <= 1e-12 / tau0);
        }
    }
}

TEST_CASE("normalized mode volume converts to um^3") {
    CavityMode m;
    m.wavelength_nm = 637.0;
    m.quality_factor = 4000.0;
    m.mode_volume_cubic_lambda_over_n = 17.0;
    const double lam_over_n = 0.637 / 2.4;
    CHECK(mode_volume_um3(m, 2.4) ==
          doctest::Approx(17.0 * lam_over_n * lam_over_n * lam_over_n).epsilon(1e-12));
}

TEST_CASE("JSON round-trips are bit-identical") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> mant(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        EmitterTransition e;
        e.wavelength_nm = 600.0 + 100.0 * mant(rng);
        e.bulk_lifetime_ns = std::exp(8.0 * mant(rng) - 2.0);
        e.zpl_branching_ratio = 0.001 + 0.998 * mant(rng);
        e.leak_ratio = 0.1 + mant(rng);
        e.geometry.overlap_eta = mant(rng);
        const auto back =
            io::emitter_transition_from_json(io::json::parse(io::to_json(e).dump()));
        CHECK(back.wavelength_nm == e.wavelength_nm);
        CHECK(back.bulk_lifetime_ns == e.bulk_lifetime_ns);
        CHECK(back.zpl_branching_ratio == e.zpl_branching_ratio);
        CHECK(back.leak_ratio == e.leak_ratio);
        CHECK(back.geometry.overlap_eta == e.geometry.overlap_eta);
    }

    CavityMode m;
    m.wavelength_nm = 636.99999999999903;
    m.quality_factor = 4300.0;
    m.mode_volume_cubic_lambda_over_n = 17.000000000000004;
    m.polarization = Polarization::TM;
    m.azimuthal_number = 46;
    m.radial_number = 2;
    const auto mode_back = io::cavity_mode_from_json(io::json::parse(io::to_json(m).dump()));
    CHECK(mode_back.wavelength_nm == m.wavelength_nm);
    CHECK(mode_back.mode_volume_cubic_lambda_over_n == m.mode_volume_cubic_lambda_over_n);
    CHECK(mode_back.polarization == Polarization::TM);

    RingGeometry g{4.8000000000000007, 0.69999999999999996, 0.28, 2.3999999999999999, 1.0, 1.45};
    const auto g_back = io::ring_geometry_from_json(io::json::parse(io::to_json(g).dump()));
    CHECK(g_back.outer_diameter_um == g.outer_diameter_um);
    CHECK(g_back.cladding_index_bottom == g.cladding_index_bottom);

    DecayModel d{0.03 / 11.1, 0.97 / 11.1, 11.244897959183673};
    const auto d_back = io::decay_model_from_json(io::json::parse(io::to_json(d).dump()));
    CHECK(d_back.zpl_rate_per_ns == d.zpl_rate_per_ns);
    CHECK(d_back.purcell_factor == d.purcell_factor);
}

TEST_CASE("polarization names") {
    CHECK(polarization_from_string("TE") == Polarization::TE);
    CHECK(polarization_from_string("TM") == Polarization::TM);
    CHECK(!polarization_from_string("te"));
}
