#include "purcellkit/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "purcellkit/purcell.hpp"

namespace purcellkit::spectra {
namespace {

double lorentzian(double x, double center, double fwhm, double amplitude) {
    const double hw = 0.5 * fwhm;
    const double d = x - center;
    return amplitude * hw * hw / (d * d + hw * hw);
}

// piecewise-linear envelope, 0 outside the knot range
double envelope_at(const std::vector<EnvelopeKnot>& knots, double x) {
    if (knots.empty()) return 0.0;
    if (x <= knots.front().wavelength_nm) return x == knots.front().wavelength_nm ? knots.front().intensity : 0.0;
    for (std::size_t i = 1; i < knots.size(); ++i) {
        if (x <= knots[i].wavelength_nm) {
            const double x0 = knots[i - 1].wavelength_nm, x1 = knots[i].wavelength_nm;
            const double y0 = knots[i - 1].intensity, y1 = knots[i].intensity;
            return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
        }
    }
    return 0.0;
}

std::vector<double> grid_points(const WavelengthGrid& grid) {
    if (!(grid.step_nm > 0.0)) throw std::invalid_argument("spectra: grid step must be > 0");
    std::vector<double> xs;
    const auto n = static_cast<std::size_t>(
        std::floor((grid.stop_nm - grid.start_nm) / grid.step_nm + 1e-9));
    xs.reserve(n + 1);
    for (std::size_t i = 0; i <= n; ++i) xs.push_back(grid.start_nm + i * grid.step_nm);
    return xs;
}

std::vector<SpectrumSample> synthesize_with(const SpectrumConfig& config,
                                            double cavity_shift_nm,
                                            const std::vector<double>& line_gain) {
    const std::vector<double> xs = grid_points(config.grid);
    std::vector<SpectrumSample> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double x = xs[i];
        double intensity = 0.0;
        for (std::size_t l = 0; l < config.lines.size(); ++l) {
            const double gain = l < line_gain.size() ? line_gain[l] : 1.0;
            intensity += gain * lorentzian(x, config.lines[l].center_nm,
                                           config.lines[l].fwhm_nm, config.lines[l].amplitude);
        }
        const double env = envelope_at(config.sideband, x);
        intensity += env;
        const double cavity_scale = config.sideband.empty() ? 1.0 : env;
        for (const CavityPeak& peak : config.cavity_modes) {
            const double center = peak.mode.wavelength_nm + cavity_shift_nm;
            const double fwhm = center / peak.mode.quality_factor;
            intensity += cavity_scale * lorentzian(x, center, fwhm, peak.amplitude);
        }
        out[i] = {x, intensity};
    }
    return out;
}

}  // namespace

std::vector<SpectrumSample> synthesize(const SpectrumConfig& config) {
    return synthesize_with(config, 0.0, {});
}

std::vector<std::vector<double>> tuning_map(const SpectrumConfig& config,
                                            const std::vector<double>& shifts_nm) {
    std::vector<std::vector<double>> rows;
    rows.reserve(shifts_nm.size());
    for (double shift : shifts_nm) {
        // enhancement of each line from the shifted mode comb, eta = 1
        std::vector<double> gain(config.lines.size(), 1.0);
        if (!config.cavity_modes.empty()) {
            std::vector<CavityMode> shifted;
            shifted.reserve(config.cavity_modes.size());
            for (const CavityPeak& peak : config.cavity_modes) {
                CavityMode mode = peak.mode;
                mode.wavelength_nm += shift;
                shifted.push_back(mode);
            }
            const std::vector<double> etas(shifted.size(), 1.0);
            for (std::size_t l = 0; l < config.lines.size(); ++l) {
                EmitterTransition probe;
                probe.wavelength_nm = config.lines[l].center_nm;
                probe.bulk_lifetime_ns = 1.0;
                probe.zpl_branching_ratio = 0.5;
                const purcell::EnhancementResult enh =
                    purcell::total_enhancement(shifted, etas, probe);
                gain[l] = 1.0 + enh.purcell_f;
            }
        }
        const std::vector<SpectrumSample> row = synthesize_with(config, shift, gain);
        std::vector<double> intensities(row.size());
        for (std::size_t i = 0; i < row.size(); ++i) intensities[i] = row[i].intensity;
        rows.push_back(std::move(intensities));
    }
    return rows;
}

std::vector<Peak> find_peaks(const std::vector<SpectrumSample>& spectrum,
                             double min_prominence) {
    std::vector<Peak> peaks;
    const int n = static_cast<int>(spectrum.size());
    for (int i = 1; i + 1 < n; ++i) {
        const double y = spectrum[i].intensity;
        if (!(y > spectrum[i - 1].intensity && y > spectrum[i + 1].intensity)) continue;

        // prominence: drop to the lowest saddle before higher terrain
        double left_min = y, right_min = y;
        for (int j = i - 1; j >= 0; --j) {
            if (spectrum[j].intensity > y) break;
            left_min = std::min(left_min, spectrum[j].intensity);
        }
        for (int j = i + 1; j < n; ++j) {
            if (spectrum[j].intensity > y) break;
            right_min = std::min(right_min, spectrum[j].intensity);
        }
        const double prominence = y - std::max(left_min, right_min);
        if (prominence < min_prominence) continue;

        // half-maximum crossings by linear interpolation
        const double half = 0.5 * y;
        double left_x = spectrum.front().wavelength_nm;
        for (int j = i; j > 0; --j) {
            if (spectrum[j - 1].intensity <= half) {
                const double x0 = spectrum[j - 1].wavelength_nm, x1 = spectrum[j].wavelength_nm;
                const double y0 = spectrum[j - 1].intensity, y1 = spectrum[j].intensity;
                left_x = x0 + (half - y0) / (y1 - y0) * (x1 - x0);
                break;
            }
        }
        double right_x = spectrum.back().wavelength_nm;
        for (int j = i; j + 1 < n; ++j) {
            if (spectrum[j + 1].intensity <= half) {
                const double x0 = spectrum[j].wavelength_nm, x1 = spectrum[j + 1].wavelength_nm;
                const double y0 = spectrum[j].intensity, y1 = spectrum[j + 1].intensity;
                right_x = x0 + (y0 - half) / (y0 - y1) * (x1 - x0);
                break;
            }
        }
        Peak peak;
        peak.center_nm = spectrum[i].wavelength_nm;
        peak.fwhm_nm = right_x - left_x;
        peak.q_estimate = peak.fwhm_nm > 0.0 ? peak.center_nm / peak.fwhm_nm : 0.0;
        peaks.push_back(peak);
    }
    return peaks;
}

}  // namespace purcellkit::spectra
