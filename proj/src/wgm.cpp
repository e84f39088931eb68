#include "purcellkit/wgm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "purcellkit/bessel.hpp"

namespace purcellkit::wgm {
namespace {

constexpr double kPi = 3.14159265358979323846;

struct RadialSetup {
    double k0 = 0.0;
    double n_in = 0.0;     // slab effective index inside the ring band
    double n_out = 0.0;    // lateral exterior effective index
    double w_in = 1.0;     // interface derivative weight (1/n^2 for TE)
    double w_out = 1.0;
    double r_inner = 0.0;
    double r_outer = 0.0;
    bool annulus = false;  // inner boundary outside the evanescent shadow
    int m = 0;
};

RadialSetup radial_setup(const RingGeometry& g, double wavelength_nm, int m,
                         Polarization pol) {
    RadialSetup s;
    s.k0 = 2.0 * kPi / (wavelength_nm * 1e-3);
    s.n_in = solve_slab(g, wavelength_nm, pol).effective_index;
    s.n_out = std::max(g.cladding_index_top, g.cladding_index_bottom);
    if (pol == Polarization::TE) {
        s.w_in = 1.0 / (s.n_in * s.n_in);
        s.w_out = 1.0 / (s.n_out * s.n_out);
    }
    s.r_inner = g.inner_radius_um();
    s.r_outer = g.outer_radius_um();
    s.m = m;
    const double caustic = m / (s.n_in * s.k0);
    s.annulus = s.r_inner >= caustic;
    return s;
}

// Middle-region coefficients (alpha, beta) of alpha*J + beta*Y matched to
// the regular hole solution J_m(n_out k0 r) at the inner boundary.
void annulus_coefficients(const RadialSetup& s, double& alpha, double& beta) {
    const double x1h = s.n_out * s.k0 * s.r_inner;
    const double x1m = s.n_in * s.k0 * s.r_inner;
    const double jm = bessel_j(s.m, x1m), jpm = bessel_j_prime(s.m, x1m);
    const double ym = bessel_y(s.m, x1m), ypm = bessel_y_prime(s.m, x1m);
    double v0 = bessel_j(s.m, x1h);
    double v1 = (s.w_out * s.n_out) / (s.w_in * s.n_in) * bessel_j_prime(s.m, x1h);
    const double scale = std::max(std::abs(v0), std::abs(v1));
    if (scale > 0.0) {
        v0 /= scale;
        v1 /= scale;
    }
    const double det = jm * ypm - jpm * ym;  // Wronskian, 2/(pi x1m)
    alpha = (v0 * ypm - v1 * ym) / det;
    beta = (v1 * jm - v0 * jpm) / det;
}

// Signed, envelope-normalized residual of the outer-boundary matching.
double characteristic(const RadialSetup& s) {
    const double x2m = s.n_in * s.k0 * s.r_outer;
    const double x2o = s.n_out * s.k0 * s.r_outer;
    double value, deriv;  // middle solution and d/d(x) at the outer boundary
    if (s.annulus) {
        double alpha = 0.0, beta = 0.0;
        annulus_coefficients(s, alpha, beta);
        value = alpha * bessel_j(s.m, x2m) + beta * bessel_y(s.m, x2m);
        deriv = alpha * bessel_j_prime(s.m, x2m) + beta * bessel_y_prime(s.m, x2m);
    } else {
        value = bessel_j(s.m, x2m);
        deriv = bessel_j_prime(s.m, x2m);
    }
    const double yo = bessel_y(s.m, x2o);
    const double ypo = bessel_y_prime(s.m, x2o);
    const double t1 = s.w_in * s.n_in * deriv * yo;
    const double t2 = s.w_out * s.n_out * value * ypo;
    const double norm = std::abs(t1) + std::abs(t2);
    return norm > 0.0 ? (t1 - t2) / norm : 0.0;
}

}  // namespace

double radial_characteristic(const RingGeometry& geometry, double wavelength_nm,
                             int azimuthal_number, Polarization pol) {
    const RadialSetup s = radial_setup(geometry, wavelength_nm, azimuthal_number, pol);
    return characteristic(s);
}

RadialField radial_field(const RingGeometry& geometry, double wavelength_nm,
                         int azimuthal_number, Polarization pol, int n_points) {
    if (n_points < 16) throw std::invalid_argument("radial_field: n_points too small");
    const RadialSetup s = radial_setup(geometry, wavelength_nm, azimuthal_number, pol);

    double alpha = 1.0, beta = 0.0;
    if (s.annulus) annulus_coefficients(s, alpha, beta);
    // exterior amplitude from value continuity at the rim
    const double x2m = s.n_in * s.k0 * s.r_outer;
    const double x2o = s.n_out * s.k0 * s.r_outer;
    const double rim = alpha * bessel_j(s.m, x2m) + beta * bessel_y(s.m, x2m);
    const double c_out = rim / bessel_y(s.m, x2o);
    // inner-hole amplitude likewise (annulus case only)
    double c_hole = 1.0;
    if (s.annulus) {
        const double x1m = s.n_in * s.k0 * s.r_inner;
        const double x1h = s.n_out * s.k0 * s.r_inner;
        c_hole = (alpha * bessel_j(s.m, x1m) + beta * bessel_y(s.m, x1m)) /
                 bessel_j(s.m, x1h);
    }

    // grid reaches the exterior caustic, where the bound approximation ends
    const double r_max = std::max(s.m / (s.n_out * s.k0), s.r_outer * 1.05);
    RadialField field;
    field.radius_grid_um.resize(n_points);
    field.amplitude.resize(n_points);
    double peak = 0.0;
    for (int i = 0; i < n_points; ++i) {
        const double r = r_max * (i + 1) / n_points;
        double a;
        if (r <= s.r_inner && s.annulus) {
            a = c_hole * bessel_j(s.m, s.n_out * s.k0 * r);
        } else if (r <= s.r_outer) {
            a = alpha * bessel_j(s.m, s.n_in * s.k0 * r) +
                beta * bessel_y(s.m, s.n_in * s.k0 * r);
        } else {
            a = c_out * bessel_y(s.m, s.n_out * s.k0 * r);
        }
        field.radius_grid_um[i] = r;
        field.amplitude[i] = a;
        peak = std::max(peak, std::abs(a));
    }
    if (peak > 0.0)
        for (double& a : field.amplitude) a /= peak;

    field.mode.wavelength_nm = wavelength_nm;
    field.mode.polarization = pol;
    field.mode.azimuthal_number = azimuthal_number;
    // p = 1 + number of interior radial nodes
    int nodes = 0;
    for (int i = 1; i < n_points; ++i) {
        if (field.radius_grid_um[i] > s.r_outer) break;
        if (field.amplitude[i - 1] * field.amplitude[i] < 0.0) ++nodes;
    }
    field.mode.radial_number = nodes + 1;
    return field;
}

std::vector<CavityMode> find_resonances(const RingGeometry& geometry,
                                        std::pair<double, double> band_nm,
                                        Polarization pol, double assigned_q) {
    std::vector<CavityMode> modes;
    const double lo = band_nm.first, hi = band_nm.second;
    if (!(hi > lo)) return modes;

    constexpr double kStepNm = 0.05;
    const double a_um = geometry.outer_radius_um();
    const double n_out = std::max(geometry.cladding_index_top, geometry.cladding_index_bottom);
    const double n_in_lo = solve_slab(geometry, lo, pol).effective_index;

    // exterior must be evanescent (m above the outer light line) and the
    // interior oscillatory somewhere in band
    const int m_min =
        static_cast<int>(std::floor(n_out * 2.0 * kPi / (hi * 1e-3) * a_um)) + 1;
    const int m_max =
        static_cast<int>(std::ceil(n_in_lo * 2.0 * kPi / (lo * 1e-3) * a_um)) + 2;

    const int n_grid = static_cast<int>(std::ceil((hi - lo) / kStepNm));
    for (int m = m_min; m <= m_max; ++m) {
        double prev_lam = lo;
        double prev_val = radial_characteristic(geometry, prev_lam, m, pol);
        for (int i = 1; i <= n_grid; ++i) {
            const double lam = std::min(lo + i * kStepNm, hi);
            const double val = radial_characteristic(geometry, lam, m, pol);
            if (prev_val * val < 0.0) {
                // bisection: bracket to 1e-6 nm and onward to double
                // precision so the residual bound holds
                double a = prev_lam, b = lam, fa = prev_val;
                for (int it = 0; it < 90 && b - a > 1e-13; ++it) {
                    const double mid = 0.5 * (a + b);
                    const double fm = radial_characteristic(geometry, mid, m, pol);
                    if (fa * fm <= 0.0) {
                        b = mid;
                    } else {
                        a = mid;
                        fa = fm;
                    }
                }
                const double root = 0.5 * (a + b);
                if (std::abs(radial_characteristic(geometry, root, m, pol)) <= 1e-9) {
                    RadialField field = radial_field(geometry, root, m, pol);
                    field.mode.quality_factor = assigned_q;
                    field.mode.mode_volume_cubic_lambda_over_n = 1.0;  // provisional
                    field.mode.mode_volume_cubic_lambda_over_n = mode_volume(field, geometry);
                    modes.push_back(field.mode);
                }
            }
            prev_lam = lam;
            prev_val = val;
        }
    }
    std::sort(modes.begin(), modes.end(),
              [](const CavityMode& a, const CavityMode& b) {
                  return a.wavelength_nm < b.wavelength_nm;
              });
    return modes;
}

namespace {

double trapezoid_volume(const RadialField& field, const RingGeometry& geometry,
                        const SlabProfileIntegrals& w, int stride) {
    const double r1 = geometry.inner_radius_um();
    const double r2 = geometry.outer_radius_um();
    const auto& rs = field.radius_grid_um;
    const auto& amp = field.amplitude;
    const int n = static_cast<int>(rs.size());

    auto integrand = [&](int i) {
        const double r = rs[i];
        const bool in_band = r >= r1 && r <= r2;
        const double column = in_band ? w.eps_weighted : w.unweighted;
        return r * amp[i] * amp[i] * column;
    };
    double sum = 0.0;
    int last = 0;
    for (int i = stride; i < n; i += stride) {
        sum += 0.5 * (integrand(last) + integrand(i)) * (rs[i] - rs[last]);
        last = i;
    }
    // denominator: peak of eps |E|^2 over the grid columns
    double peak = 0.0;
    for (int i = 0; i < n; i += stride) {
        const double r = rs[i];
        const bool in_band = r >= r1 && r <= r2;
        const double eps = in_band ? geometry.core_index * geometry.core_index : 1.0;
        peak = std::max(peak, eps * amp[i] * amp[i]);
    }
    return 2.0 * kPi * sum / peak;
}

}  // namespace

double mode_volume(const RadialField& field, const RingGeometry& geometry) {
    if (field.radius_grid_um.size() != field.amplitude.size() ||
        field.radius_grid_um.size() < 8)
        throw std::invalid_argument("mode_volume: malformed field grid");
    const SlabSolution slab =
        solve_slab(geometry, field.mode.wavelength_nm, field.mode.polarization);
    const SlabProfileIntegrals w =
        slab_profile_integrals(geometry, field.mode.wavelength_nm, slab);

    const double full = trapezoid_volume(field, geometry, w, 1);
    const double half = trapezoid_volume(field, geometry, w, 2);
    if (std::abs(full - half) > 0.01 * std::abs(full))
        throw std::runtime_error("mode_volume: grid too coarse (refinement changes result by > 1%)");

    const double lam_over_n_um =
        field.mode.wavelength_nm * 1e-3 / geometry.core_index;
    return full / (lam_over_n_um * lam_over_n_um * lam_over_n_um);
}

}  // namespace purcellkit::wgm
