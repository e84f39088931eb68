#pragma once

#include <vector>

#include "purcellkit/core.hpp"

// Weak-coupling enhancement math: the ideal-placement cavity factor, the
// Lorentzian detuning rolloff, multi-mode superposition (independent
// additive channels, as the two standing-wave modes are treated), the
// lifetime-based extraction, and branching-ratio projections.

namespace purcellkit::purcell {

struct EnhancementResult {
    double purcell_f = 0.0;    // sum of per-mode contributions
    double total_factor = 0.0; // leak_ratio + purcell_f
    std::vector<std::pair<int, double>> per_mode_f;  // (mode index, F_i)
};

// F_cav = (3 / 4 pi^2) (lambda/n)^3 Q / V_mode with V in (lambda/n)^3 units,
// so the wavelength cancels: (3 / 4 pi^2) Q / v.
double f_cav(const CavityMode& mode);

// 1 / (1 + 4 Q^2 (lambda_i/lambda_cav - 1)^2), in [0, 1].
double lorentzian_detuning(const CavityMode& mode, double emitter_wavelength_nm);

// Single-mode F = f_cav * eta^2 * lorentzian_detuning.
double purcell_factor(const CavityMode& mode, const EmitterTransition& emitter);

// Independent per-mode contributions summed; etas is parallel to modes.
EnhancementResult total_enhancement(const std::vector<CavityMode>& modes,
                                    const std::vector<double>& etas,
                                    const EmitterTransition& emitter);

// Fitted-peak parameterization of the same superposition: peak_f[i] is the
// on-resonance F of mode i (absorbing f_cav and eta^2), scaled here by the
// Lorentzian detuning factor only.
EnhancementResult total_enhancement_from_peaks(const std::vector<CavityMode>& modes,
                                               const std::vector<double>& peak_f,
                                               const EmitterTransition& emitter);

// F = (tau_0/tau_coupled - 1) / xi_zpl. Throws std::domain_error when
// tau_coupled exceeds tau_0 (would imply negative F).
double purcell_from_lifetimes(double tau0_ns, double tau_coupled_ns, double xi_zpl);

// (1+f) xi / ((1+f) xi + (1-xi)): the ZPL branching ratio under enhancement f.
double enhanced_branching(double xi_zpl, double f);

// Branching ratio reached by a design (q, v) at zero detuning, ideal overlap.
double design_projection(double q, double v, double xi_zpl);

}  // namespace purcellkit::purcell
