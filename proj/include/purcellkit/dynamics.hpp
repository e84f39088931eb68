#pragma once

#include <cstdint>
#include <vector>

#include "purcellkit/core.hpp"

// Forward model for the time-domain measurements: coupled lifetimes,
// lifetime-vs-detuning scans, and synthetic photon-count histograms.

namespace purcellkit::dynamics {

// Binned photon-count time series under pulsed excitation.
struct Histogram {
    std::vector<double> bin_edges_ns;     // strictly increasing, length counts+1
    std::vector<std::int64_t> counts;     // non-negative
    double repetition_rate_mhz = 0.0;
};

struct DetuningPoint {
    double detuning_nm = 0.0;   // lambda_C2 - lambda_emitter convention
    double lifetime_ns = 0.0;
    double sigma_ns = 0.0;
};

// Series of (detuning, lifetime) points; reference_mode_spacing_nm records
// the C1-C2 doublet spacing used to generate or interpret the scan.
struct DetuningScan {
    std::vector<DetuningPoint> points;
    double reference_mode_spacing_nm = 0.0;
};

// tau_ZPL = tau0/xi, tau_PS = tau0/(1-xi); the coupled rate is
// (1+f)/tau_ZPL + 1/tau_PS, so tau_coupled = tau0 / (1 + f*xi).
double coupled_lifetime(const EmitterTransition& emitter, double purcell_f);

// Rigidly shifts the mode comb over the fixed emitter (the condensation
// tuning picture). detuning_nm is lambda_ref - lambda_emitter where the
// reference is the longest-wavelength mode in the list (C2 of the paper's
// doublet, the first to cross when red-tuning). peak_f holds each mode's
// on-resonance F; sigma_ns is 0 in the generated scan.
DetuningScan lifetime_vs_detuning(const EmitterTransition& emitter,
                                  const std::vector<CavityMode>& modes,
                                  const std::vector<double>& peak_f,
                                  const std::vector<double>& detunings_nm);

struct Contamination {
    double amplitude_fraction = 0.0;  // fraction of the t=0 count-rate amplitude
    double tau_ns = 1.0;
};

// Photon arrival times drawn from the two-exponential mixture and wrapped
// modulo the repetition period. amplitude_fraction is the contamination's
// share of the t=0 count rate, so its photon share is
// a*tau_c / (a*tau_c + (1-a)*tau). Deterministic for a fixed seed
// (mt19937_64, inversion sampling).
std::vector<double> sample_arrival_times(double true_lifetime_ns, std::int64_t n_photons,
                                         double repetition_rate_mhz,
                                         const Contamination& contamination,
                                         std::uint64_t seed);

// Bins the wrapped arrival times into floor(period / bin_width) full bins;
// photons falling in a final partial bin (when the width does not divide
// the period) are discarded, keeping the histogram span <= period.
Histogram simulate_histogram(double true_lifetime_ns, std::int64_t n_photons,
                             double bin_width_ns, double repetition_rate_mhz,
                             const Contamination& contamination, std::uint64_t seed);

// Mean of the exponential distribution truncated to [0, span):
// tau - span * e^{-span/tau} / (1 - e^{-span/tau}).
double truncated_exponential_mean(double tau_ns, double span_ns);

}  // namespace purcellkit::dynamics
