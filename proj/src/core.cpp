#include "purcellkit/core.hpp"

#include <algorithm>
#include <cmath>

namespace purcellkit {

const char* to_string(Polarization pol) {
    return pol == Polarization::TE ? "TE" : "TM";
}

std::optional<Polarization> polarization_from_string(const std::string& s) {
    if (s == "TE") return Polarization::TE;
    if (s == "TM") return Polarization::TM;
    return std::nullopt;
}

std::optional<std::string> validate(const CavityMode& mode) {
    if (!(mode.wavelength_nm > 0.0)) return "wavelength_nm must be > 0";
    if (!(mode.quality_factor > 0.0)) return "quality_factor must be > 0";
    if (!(mode.mode_volume_cubic_lambda_over_n > 0.0))
        return "mode_volume_cubic_lambda_over_n must be > 0";
    if (mode.radial_number < 1) return "radial_number must be >= 1";
    if (mode.azimuthal_number < 0) return "azimuthal_number must be >= 0";
    return std::nullopt;
}

std::optional<std::string> validate(const CouplingGeometry& geometry) {
    if (!(geometry.overlap_eta >= 0.0 && geometry.overlap_eta <= 1.0))
        return "overlap_eta must be in [0, 1]";
    return std::nullopt;
}

std::optional<std::string> validate(const EmitterTransition& transition) {
    if (!(transition.wavelength_nm > 0.0)) return "wavelength_nm must be > 0";
    if (!(transition.bulk_lifetime_ns > 0.0)) return "bulk_lifetime_ns must be > 0";
    if (!(transition.zpl_branching_ratio > 0.0 && transition.zpl_branching_ratio < 1.0))
        return "zpl_branching_ratio must be in (0, 1)";
    if (!(transition.leak_ratio > 0.0)) return "leak_ratio must be > 0";
    return validate(transition.geometry);
}

std::optional<std::string> validate(const DecayModel& model) {
    if (!(model.zpl_rate_per_ns >= 0.0)) return "zpl_rate_per_ns must be >= 0";
    if (!(model.sideband_rate_per_ns >= 0.0)) return "sideband_rate_per_ns must be >= 0";
    if (!(model.purcell_factor >= 0.0)) return "purcell_factor must be >= 0";
    return std::nullopt;
}

std::optional<std::string> validate(const RingGeometry& geometry) {
    if (!(geometry.outer_diameter_um > 0.0)) return "outer_diameter_um must be > 0";
    if (!(geometry.ring_width_um > 0.0)) return "ring_width_um must be > 0";
    if (!(geometry.membrane_thickness_um > 0.0)) return "membrane_thickness_um must be > 0";
    if (!(geometry.ring_width_um < 0.5 * geometry.outer_diameter_um))
        return "ring_width_um must be < outer_diameter_um / 2";
    if (!(geometry.core_index >
          std::max(geometry.cladding_index_top, geometry.cladding_index_bottom)))
        return "core_index must exceed both cladding indices";
    return std::nullopt;
}

DecayModel make_decay_model(const EmitterTransition& transition, double purcell_f) {
    const double total = 1.0 / transition.bulk_lifetime_ns;
    return DecayModel{transition.zpl_branching_ratio * total,
                      (1.0 - transition.zpl_branching_ratio) * total, purcell_f};
}

double total_rate_per_ns(const DecayModel& model) {
    return (1.0 + model.purcell_factor) * model.zpl_rate_per_ns + model.sideband_rate_per_ns;
}

double mode_volume_um3(const CavityMode& mode, double core_index) {
    const double lam_over_n_um = mode.wavelength_nm * 1e-3 / core_index;
    return mode.mode_volume_cubic_lambda_over_n * lam_over_n_um * lam_over_n_um * lam_over_n_um;
}

}  // namespace purcellkit
