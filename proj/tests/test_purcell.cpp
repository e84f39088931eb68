#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "purcellkit/dynamics.hpp"
#include "purcellkit/purcell.hpp"

using namespace purcellkit;
using namespace purcellkit::purcell;

namespace {

CavityMode mode_with(double q, double v, double lam = 637.0) {
    CavityMode m;
    m.wavelength_nm = lam;
    m.quality_factor = q;
    m.mode_volume_cubic_lambda_over_n = v;
    m.azimuthal_number = 46;
    m.radial_number = 1;
    return m;
}

EmitterTransition nv1(double eta = 1.0) {
    EmitterTransition e;
    e.wavelength_nm = 637.0;
    e.bulk_lifetime_ns = 11.1;
    e.zpl_branching_ratio = 0.03;
    e.leak_ratio = 1.0;
    e.geometry.overlap_eta = eta;
    return e;
}

}  // namespace

TEST_CASE("ideal-placement factor") {
    CHECK(f_cav(mode_with(4000.0, 17.0)) == doctest::Approx(17.8803).epsilon(1e-4));
    CHECK(f_cav(mode_with(4000.0, 32.0)) == doctest::Approx(9.4989).epsilon(1e-4));
    CHECK(f_cav(mode_with(1e-30, 17.0)) <= 1e-30);
}

TEST_CASE("Lorentzian detuning factor") {
    CHECK(lorentzian_detuning(mode_with(3800.0, 17.0), 637.0) == 1.0);
    // half width: deviation of 1/(2Q) in the wavelength ratio
    const CavityMode m = mode_with(3800.0, 17.0);
    const double half_width_lam = 637.0 * (1.0 + 1.0 / (2.0 * 3800.0));
    CHECK(lorentzian_detuning(m, half_width_lam) == doctest::Approx(0.5).epsilon(1e-12));
    // uncoupled case: 0.24 nm off a Q=3800 resonance
    CHECK(lorentzian_detuning(mode_with(3800.0, 17.0, 637.0), 637.24) ==
          doctest::Approx(0.10866).epsilon(1e-3));
}

TEST_CASE("single-mode Purcell factor composes the three factors") {
    CHECK(purcell_factor(mode_with(4000.0, 17.0), nv1()) ==
          doctest::Approx(17.8803).epsilon(1e-4));
    CHECK(purcell_factor(mode_with(4000.0, 17.0), nv1(0.0)) == 0.0);
    // half-width detuning exactly halves the on-resonance value
    EmitterTransition detuned = nv1();
    detuned.wavelength_nm = 637.0 * (1.0 + 1.0 / (2.0 * 3800.0));
    const double on_res = purcell_factor(mode_with(3800.0, 23.0), nv1());
    CHECK(purcell_factor(mode_with(3800.0, 23.0), detuned) ==
          doctest::Approx(0.5 * on_res).epsilon(1e-12));
}

TEST_CASE("two-mode superposition") {
    const CavityMode near = mode_with(3800.0, 17.0, 637.0);
    // 50 linewidths away: linewidth = lam/Q
    const CavityMode far = mode_with(4300.0, 17.0, 637.0 + 50.0 * 637.0 / 4300.0);
    const auto both = total_enhancement({near, far}, {1.0, 1.0}, nv1());
    const auto single = total_enhancement({near}, {1.0}, nv1());
    CHECK(std::abs(both.purcell_f - single.purcell_f) <= 1e-3 * single.purcell_f);
    CHECK(both.per_mode_f.size() == 2);
    CHECK(both.total_factor == doctest::Approx(1.0 + both.purcell_f).epsilon(1e-15));

    const auto empty = total_enhancement({}, {}, nv1());
    CHECK(empty.purcell_f == 0.0);
    CHECK(empty.total_factor == 1.0);

    CHECK_THROWS_AS(total_enhancement({near}, {1.0, 0.5}, nv1()), std::invalid_argument);
    CHECK_THROWS_AS(total_enhancement_from_peaks({near}, {}, nv1()), std::invalid_argument);
}

TEST_CASE("per-mode sum matches the result field") {
    const auto r = total_enhancement({mode_with(4300.0, 20.0, 636.8), mode_with(3800.0, 17.0, 637.1)},
                                     {0.7, 0.9}, nv1());
    double sum = 0.0;
    for (const auto& [idx, f] : r.per_mode_f) sum += f;
    CHECK(sum == doctest::Approx(r.purcell_f).epsilon(1e-15));
    CHECK(r.total_factor >= 1.0);
}

TEST_CASE("extraction from the lifetime pair") {
    CHECK(purcell_from_lifetimes(11.1, 8.3, 0.03) == doctest::Approx(11.2449).epsilon(1e-4));
    CHECK(purcell_from_lifetimes(9.7, 9.7, 0.41) == 0.0);
    CHECK(purcell_from_lifetimes(11.1, 10.4, 0.03) == doctest::Approx(2.2436).epsilon(1e-3));
    CHECK_THROWS_AS(purcell_from_lifetimes(11.1, 11.2, 0.03), std::domain_error);
}

TEST_CASE("enhanced branching ratio") {
    CHECK(std::abs(enhanced_branching(0.03, 11.0) - 36.0 / 133.0) <= 1e-12);
    for (double xi : {0.024, 0.03, 0.05})
        CHECK(enhanced_branching(xi, 0.0) == doctest::Approx(xi).epsilon(1e-15));
    const double f_same_design = f_cav(mode_with(5e5, 17.0));
    CHECK(enhanced_branching(0.03, f_same_design) > 0.98);
    CHECK(enhanced_branching(0.03, f_same_design) == doctest::Approx(0.9857).epsilon(1e-3));
}

TEST_CASE("design projections") {
    CHECK(design_projection(2e5, 2.0, 0.03) > 0.995);
    CHECK(design_projection(2e5, 2.0, 0.03) == doctest::Approx(0.99576).epsilon(1e-4));
    CHECK(design_projection(5e5, 17.0, 0.03) == doctest::Approx(0.9857).epsilon(1e-3));
    CHECK(design_projection(1e-12, 5.0, 0.03) == doctest::Approx(0.03).epsilon(1e-9));
}

TEST_CASE("monotonicity in Q") {
    // on resonance F grows with Q; in the far tail it shrinks
    EmitterTransition tail_emitter = nv1();
    tail_emitter.wavelength_nm = 637.0 * (1.0 + 3.0 / 3000.0);  // several linewidths out
    double prev_on = 0.0, prev_tail = 1e300;
    for (double q = 3000.0; q <= 30000.0; q *= 1.3) {
        const double f_on = purcell_factor(mode_with(q, 17.0), nv1());
        CHECK(f_on > prev_on);
        prev_on = f_on;
        const double f_tail = purcell_factor(mode_with(q, 17.0), tail_emitter);
        CHECK(f_tail < prev_tail);
        prev_tail = f_tail;
    }
}

TEST_CASE("detuning factor is symmetric in the ratio deviation") {
    const CavityMode m = mode_with(3800.0, 17.0);
    for (double delta : {0.01, 0.1, 0.24, 1.0}) {
        const double plus = lorentzian_detuning(m, 637.0 + delta);
        const double minus = lorentzian_detuning(m, 637.0 * (2.0 - (637.0 + delta) / 637.0));
        CHECK(std::abs(plus - minus) <= 1e-6 * plus);
    }
}

TEST_CASE("branching is strictly increasing in f and bounded by 1") {
    double prev = 0.0;
    for (double f = 0.0; f <= 1e6; f = f * 3.0 + 1.0) {
        const double xi = enhanced_branching(0.03, f);
        CHECK(xi >= 0.03);
        CHECK(xi < 1.0);
        CHECK(xi > prev - 1e-15);
        if (f > 0.0) CHECK(xi > prev);
        prev = xi;
    }
}

TEST_CASE("closure loop with the decay model") {
    for (double tau0 : {8.0, 11.1, 23.0}) {
        for (double xi : {0.024, 0.03, 0.05}) {
            for (double f : {0.3, 2.2436, 11.2449, 140.0}) {
                EmitterTransition e = nv1();
                e.bulk_lifetime_ns = tau0;
                e.zpl_branching_ratio = xi;
                const double tau_coupled = dynamics::coupled_lifetime(e, f);
                const double back = purcell_from_lifetimes(tau0, tau_coupled, xi);
                CHECK(std::abs(back - f) <= 1e-10 * f);
            }
        }
    }
}
