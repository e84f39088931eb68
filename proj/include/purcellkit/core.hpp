#pragma once

#include <optional>
#include <string>

// Shared domain types and unit conventions.
//
// Units are fixed repo-wide: wavelengths in nm, lifetimes in ns, lengths in
// um, rates in ns^-1. Mode volumes are stored in normalized (lambda/n)^3
// units; mode_volume_um3() converts.

namespace purcellkit {

enum class Polarization { TE, TM };

const char* to_string(Polarization pol);
std::optional<Polarization> polarization_from_string(const std::string& s);

// One optical resonance of the microring.
struct CavityMode {
    double wavelength_nm = 0.0;                    // vacuum wavelength
    double quality_factor = 0.0;                   // Q, always a user input
    double mode_volume_cubic_lambda_over_n = 0.0;  // V in (lambda/n)^3
    Polarization polarization = Polarization::TE;
    int azimuthal_number = 0;                      // m
    int radial_number = 1;                         // p >= 1
};

// Combined position/orientation field-overlap factor,
// eta = (E(r)*mu) / (|E_max||mu|), in [0, 1].
struct CouplingGeometry {
    double overlap_eta = 1.0;
};

// One dipole line of the emitter.
struct EmitterTransition {
    double wavelength_nm = 0.0;
    double bulk_lifetime_ns = 0.0;      // tau_0
    double zpl_branching_ratio = 0.0;   // xi in (0, 1)
    double leak_ratio = 1.0;            // tau_0/tau_leak, assumed 1 by default
    CouplingGeometry geometry{};
};

// ZPL/sideband rate decomposition with Purcell modification of the ZPL
// channel: total rate = (1 + F) * zpl_rate + sideband_rate.
struct DecayModel {
    double zpl_rate_per_ns = 0.0;       // 1/tau_ZPL
    double sideband_rate_per_ns = 0.0;  // 1/tau_PS
    double purcell_factor = 0.0;        // F >= 0
};

// Microring cross-section and materials.
struct RingGeometry {
    double outer_diameter_um = 0.0;
    double ring_width_um = 0.0;
    double membrane_thickness_um = 0.0;
    double core_index = 0.0;            // n
    double cladding_index_top = 1.0;
    double cladding_index_bottom = 1.0;

    double outer_radius_um() const { return 0.5 * outer_diameter_um; }
    double inner_radius_um() const { return 0.5 * outer_diameter_um - ring_width_um; }
};

// Each validate() returns nullopt when all invariants hold, otherwise the
// name of the first violated invariant.
std::optional<std::string> validate(const CavityMode& mode);
std::optional<std::string> validate(const CouplingGeometry& geometry);
std::optional<std::string> validate(const EmitterTransition& transition);
std::optional<std::string> validate(const DecayModel& model);
std::optional<std::string> validate(const RingGeometry& geometry);

// Rate decomposition of a transition: zpl_rate = xi/tau_0,
// sideband_rate = (1-xi)/tau_0. At f = 0 the total rate is exactly 1/tau_0.
DecayModel make_decay_model(const EmitterTransition& transition, double purcell_f);

double total_rate_per_ns(const DecayModel& model);

// V in (lambda/n)^3 -> um^3 for a given core index.
double mode_volume_um3(const CavityMode& mode, double core_index);

}  // namespace purcellkit
