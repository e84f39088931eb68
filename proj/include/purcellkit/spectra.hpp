#pragma once

#include <vector>

#include "purcellkit/core.hpp"

// Synthetic photoluminescence spectra: Lorentzian emitter lines, cavity
// peaks riding on a piecewise-linear sideband envelope, and tuning-scan
// maps where cavity modes sweep across the lines. Qualitative fixtures for
// peak finding and demo output, not radiometry.

namespace purcellkit::spectra {

struct SpectralLine {
    double center_nm = 0.0;
    double fwhm_nm = 0.0;
    double amplitude = 0.0;  // peak height
};

struct CavityPeak {
    CavityMode mode{};       // FWHM = wavelength / Q
    double amplitude = 0.0;
};

struct EnvelopeKnot {
    double wavelength_nm = 0.0;
    double intensity = 0.0;
};

struct WavelengthGrid {
    double start_nm = 0.0;
    double stop_nm = 0.0;
    double step_nm = 0.0;
};

struct SpectrumConfig {
    std::vector<SpectralLine> lines;
    std::vector<CavityPeak> cavity_modes;
    std::vector<EnvelopeKnot> sideband;  // piecewise-linear; empty = no sideband background
    WavelengthGrid grid{};
};

struct SpectrumSample {
    double wavelength_nm = 0.0;
    double intensity = 0.0;
};

// Lines + envelope + cavity peaks scaled by the local envelope. Cavity
// peaks on an absent envelope use unit scaling so an isolated resonance is
// still visible; an entirely empty config yields all zeros.
std::vector<SpectrumSample> synthesize(const SpectrumConfig& config);

// Row i: synthesize with all cavity modes shifted by shifts_nm[i], each
// line amplified by (1 + F_total) for its enhanced ZPL emission rate
// (collection-efficiency changes ignored; qualitative only).
std::vector<std::vector<double>> tuning_map(const SpectrumConfig& config,
                                            const std::vector<double>& shifts_nm);

struct Peak {
    double center_nm = 0.0;
    double fwhm_nm = 0.0;
    double q_estimate = 0.0;  // center / FWHM
};

// Local maxima above the prominence threshold on a uniform grid; FWHM by
// linear interpolation of the half-maximum crossings.
std::vector<Peak> find_peaks(const std::vector<SpectrumSample>& spectrum,
                             double min_prominence);

}  // namespace purcellkit::spectra
