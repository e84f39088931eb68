#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "purcellkit/core.hpp"
#include "purcellkit/dynamics.hpp"

// Inverse problems: damped Gauss-Newton least squares, exponential lifetime
// extraction with a skip window, and the two-mode Lorentzian detuning fit.

namespace purcellkit::fit {

struct FitReport {
    std::map<std::string, double> parameters;
    std::map<std::string, double> sigmas;  // 1-sigma, inverse-Hessian scaled by reduced chi2
    double reduced_chi2 = 0.0;
    int iterations = 0;
    bool converged = false;
};

using ResidualFn = std::function<std::vector<double>(const std::vector<double>&)>;

struct Bounds {
    std::vector<double> lower;
    std::vector<double> upper;
};

struct MinimizeOptions {
    std::vector<std::string> names;  // parameter names for the report; p0, p1, ... if empty
    std::optional<Bounds> bounds;
    int max_iterations = 200;
    double cost_tolerance = 1e-10;   // relative cost change on an accepted step
    double gradient_tolerance = 1e-8; // scaled gradient inf-norm for the converged flag
};

// Damped Gauss-Newton: damping grows on cost increase and shrinks on
// decrease. Non-convergence is flagged in the report, not thrown; a
// Jacobian rank-deficient beyond damping repair throws std::runtime_error.
FitReport minimize(const ResidualFn& residual_fn, std::vector<double> initial,
                   const MinimizeOptions& options = {});

enum class LifetimeModel { single_exp, single_exp_plus_constant };

// Fits counts(t) = A exp(-t/tau) (+ C) over bins whose left edge is at or
// beyond skip_ns, Poisson-weighted by 1/max(count, 1); t is the bin center.
// Report parameters: amplitude, tau_ns (, constant).
FitReport fit_lifetime(const dynamics::Histogram& hist, double skip_ns,
                       LifetimeModel model = LifetimeModel::single_exp);

struct DetuningFitConfig {
    double q1 = 0.0;
    double q2 = 0.0;
    double mode_spacing_nm = 0.0;
    bool float_qs = false;  // sensitivity studies only; default matches the measured-Q treatment
};

// Least-squares fit of the two-mode scan model built on
// dynamics::lifetime_vs_detuning, with Q's held at their spectrally
// measured values. Free: tau0_ns, peak_f1, peak_f2, center_offset_nm.
// Points with sigma_ns > 0 are weighted 1/sigma, otherwise by 1/lifetime
// (multiplicative noise). The emitter supplies the branching ratio.
FitReport fit_detuning_scan(const dynamics::DetuningScan& scan,
                            const EmitterTransition& emitter,
                            const DetuningFitConfig& config);

// Model curve for a fitted (or trial) parameter set, for plotting.
std::vector<double> detuning_model_lifetimes(const std::vector<double>& detunings_nm,
                                             const EmitterTransition& emitter,
                                             const DetuningFitConfig& config,
                                             double tau0_ns, double peak_f1, double peak_f2,
                                             double center_offset_nm);

}  // namespace purcellkit::fit
