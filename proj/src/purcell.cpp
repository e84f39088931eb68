#include "purcellkit/purcell.hpp"

#include <cmath>
#include <stdexcept>

namespace purcellkit::purcell {
namespace {
constexpr double kPi = 3.14159265358979323846;
}

double f_cav(const CavityMode& mode) {
    return 3.0 / (4.0 * kPi * kPi) * mode.quality_factor /
           mode.mode_volume_cubic_lambda_over_n;
}

double lorentzian_detuning(const CavityMode& mode, double emitter_wavelength_nm) {
    const double dev = emitter_wavelength_nm / mode.wavelength_nm - 1.0;
    const double q = mode.quality_factor;
    return 1.0 / (1.0 + 4.0 * q * q * dev * dev);
}

double purcell_factor(const CavityMode& mode, const EmitterTransition& emitter) {
    const double eta = emitter.geometry.overlap_eta;
    return f_cav(mode) * eta * eta * lorentzian_detuning(mode, emitter.wavelength_nm);
}

EnhancementResult total_enhancement(const std::vector<CavityMode>& modes,
                                    const std::vector<double>& etas,
                                    const EmitterTransition& emitter) {
    if (modes.size() != etas.size())
        throw std::invalid_argument("total_enhancement: modes and etas must be parallel lists");
    EnhancementResult result;
    for (std::size_t i = 0; i < modes.size(); ++i) {
        const double f = f_cav(modes[i]) * etas[i] * etas[i] *
                         lorentzian_detuning(modes[i], emitter.wavelength_nm);
        result.per_mode_f.emplace_back(static_cast<int>(i), f);
        result.purcell_f += f;
    }
    result.total_factor = emitter.leak_ratio + result.purcell_f;
    return result;
}

EnhancementResult total_enhancement_from_peaks(const std::vector<CavityMode>& modes,
                                               const std::vector<double>& peak_f,
                                               const EmitterTransition& emitter) {
    if (modes.size() != peak_f.size())
        throw std::invalid_argument("total_enhancement_from_peaks: modes and peak_f must be parallel lists");
    EnhancementResult result;
    for (std::size_t i = 0; i < modes.size(); ++i) {
        const double f = peak_f[i] * lorentzian_detuning(modes[i], emitter.wavelength_nm);
        result.per_mode_f.emplace_back(static_cast<int>(i), f);
        result.purcell_f += f;
    }
    result.total_factor = emitter.leak_ratio + result.purcell_f;
    return result;
}

double purcell_from_lifetimes(double tau0_ns, double tau_coupled_ns, double xi_zpl) {
    if (!(tau_coupled_ns > 0.0) || !(xi_zpl > 0.0 && xi_zpl < 1.0))
        throw std::invalid_argument("purcell_from_lifetimes: need tau_coupled > 0 and xi in (0, 1)");
    if (tau_coupled_ns > tau0_ns)
        throw std::domain_error("purcell_from_lifetimes: coupled lifetime exceeds bulk lifetime");
    return (tau0_ns / tau_coupled_ns - 1.0) / xi_zpl;
}

double enhanced_branching(double xi_zpl, double f) {
    const double zpl = (1.0 + f) * xi_zpl;
    return zpl / (zpl + (1.0 - xi_zpl));
}

double design_projection(double q, double v, double xi_zpl) {
    CavityMode mode;
    mode.wavelength_nm = 637.0;  // cancels in f_cav for normalized v
    mode.quality_factor = q;
    mode.mode_volume_cubic_lambda_over_n = v;
    return enhanced_branching(xi_zpl, f_cav(mode));
}

}  // namespace purcellkit::purcell
