#include "purcellkit/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "purcellkit/purcell.hpp"

namespace purcellkit::dynamics {

double coupled_lifetime(const EmitterTransition& emitter, double purcell_f) {
    if (!(purcell_f >= 0.0)) throw std::invalid_argument("coupled_lifetime: f must be >= 0");
    const DecayModel model = make_decay_model(emitter, purcell_f);
    return 1.0 / total_rate_per_ns(model);
}

DetuningScan lifetime_vs_detuning(const EmitterTransition& emitter,
                                  const std::vector<CavityMode>& modes,
                                  const std::vector<double>& peak_f,
                                  const std::vector<double>& detunings_nm) {
    if (modes.size() != peak_f.size())
        throw std::invalid_argument("lifetime_vs_detuning: modes and peak_f must be parallel lists");
    DetuningScan scan;
    if (modes.empty()) {
        for (double d : detunings_nm)
            scan.points.push_back({d, emitter.bulk_lifetime_ns, 0.0});
        return scan;
    }
    const double lam_ref =
        std::max_element(modes.begin(), modes.end(),
                         [](const CavityMode& a, const CavityMode& b) {
                             return a.wavelength_nm < b.wavelength_nm;
                         })
            ->wavelength_nm;
    const double lam_min =
        std::min_element(modes.begin(), modes.end(),
                         [](const CavityMode& a, const CavityMode& b) {
                             return a.wavelength_nm < b.wavelength_nm;
                         })
            ->wavelength_nm;
    scan.reference_mode_spacing_nm = lam_ref - lam_min;

    for (double d : detunings_nm) {
        // place the comb so the reference mode sits at emitter + d
        const double shift = emitter.wavelength_nm + d - lam_ref;
        std::vector<CavityMode> shifted = modes;
        for (CavityMode& mode : shifted) mode.wavelength_nm += shift;
        const purcell::EnhancementResult enh =
            purcell::total_enhancement_from_peaks(shifted, peak_f, emitter);
        scan.points.push_back({d, coupled_lifetime(emitter, enh.purcell_f), 0.0});
    }
    return scan;
}

std::vector<double> sample_arrival_times(double true_lifetime_ns, std::int64_t n_photons,
                                         double repetition_rate_mhz,
                                         const Contamination& contamination,
                                         std::uint64_t seed) {
    if (!(true_lifetime_ns > 0.0))
        throw std::invalid_argument("sample_arrival_times: lifetime must be > 0");
    if (!(contamination.amplitude_fraction >= 0.0 && contamination.amplitude_fraction < 1.0))
        throw std::invalid_argument("sample_arrival_times: amplitude_fraction must be in [0, 1)");
    if (!(repetition_rate_mhz > 0.0))
        throw std::invalid_argument("sample_arrival_times: repetition rate must be > 0");
    const double period = 1000.0 / repetition_rate_mhz;

    // amplitude share -> photon share of the fast component
    const double a = contamination.amplitude_fraction;
    const double photon_weight =
        a > 0.0 ? a * contamination.tau_ns /
                      (a * contamination.tau_ns + (1.0 - a) * true_lifetime_ns)
                : 0.0;

    std::mt19937_64 rng(seed);
    auto uniform = [&rng]() {
        // 53-bit mantissa in [0, 1); explicit so output is platform-stable
        return static_cast<double>(rng() >> 11) * 0x1.0p-53;
    };
    std::vector<double> times;
    times.reserve(static_cast<std::size_t>(n_photons));
    for (std::int64_t i = 0; i < n_photons; ++i) {
        const double branch = uniform();
        const double u = uniform();
        const double tau = branch < photon_weight ? contamination.tau_ns : true_lifetime_ns;
        const double t = -tau * std::log1p(-u);
        times.push_back(std::fmod(t, period));
    }
    return times;
}

Histogram simulate_histogram(double true_lifetime_ns, std::int64_t n_photons,
                             double bin_width_ns, double repetition_rate_mhz,
                             const Contamination& contamination, std::uint64_t seed) {
    if (!(bin_width_ns > 0.0))
        throw std::invalid_argument("simulate_histogram: bin width must be > 0");
    if (n_photons < 0)
        throw std::invalid_argument("simulate_histogram: n_photons must be >= 0");
    const double period = 1000.0 / repetition_rate_mhz;
    const auto n_bins = static_cast<std::int64_t>(std::floor(period / bin_width_ns + 1e-9));
    if (n_bins < 1)
        throw std::invalid_argument("simulate_histogram: bin width exceeds the repetition period");

    Histogram hist;
    hist.repetition_rate_mhz = repetition_rate_mhz;
    hist.bin_edges_ns.resize(static_cast<std::size_t>(n_bins) + 1);
    for (std::int64_t i = 0; i <= n_bins; ++i)
        hist.bin_edges_ns[static_cast<std::size_t>(i)] = static_cast<double>(i) * bin_width_ns;
    hist.counts.assign(static_cast<std::size_t>(n_bins), 0);

    const std::vector<double> times = sample_arrival_times(
        true_lifetime_ns, n_photons, repetition_rate_mhz, contamination, seed);
    const double span = n_bins * bin_width_ns;
    for (double t : times) {
        if (t >= span) continue;  // partial-stub photons are dropped
        auto idx = static_cast<std::int64_t>(t / bin_width_ns);
        if (idx >= n_bins) idx = n_bins - 1;
        ++hist.counts[static_cast<std::size_t>(idx)];
    }
    return hist;
}

double truncated_exponential_mean(double tau_ns, double span_ns) {
    const double r = std::exp(-span_ns / tau_ns);
    return tau_ns - span_ns * r / (1.0 - r);
}

}  // namespace purcellkit::dynamics
