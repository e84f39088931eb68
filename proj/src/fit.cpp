#include "purcellkit/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace purcellkit::fit {
namespace {

// Cholesky solve of (A + damping*diag(A)) x = b for small symmetric
// positive-definite systems; returns false when factorization fails.
bool solve_damped(std::vector<double> a, int n, double damping, std::vector<double> b,
                  std::vector<double>& x) {
    for (int i = 0; i < n; ++i) a[i * n + i] *= 1.0 + damping;
    // in-place Cholesky, lower triangle
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            double sum = a[i * n + j];
            for (int k = 0; k < j; ++k) sum -= a[i * n + k] * a[j * n + k];
            if (i == j) {
                if (!(sum > 0.0)) return false;
                a[i * n + i] = std::sqrt(sum);
            } else {
                a[i * n + j] = sum / (a[j * n + j]);
            }
        }
    }
    for (int i = 0; i < n; ++i) {
        double sum = b[i];
        for (int k = 0; k < i; ++k) sum -= a[i * n + k] * x[k];
        x[i] = sum / a[i * n + i];
    }
    for (int i = n - 1; i >= 0; --i) {
        double sum = x[i];
        for (int k = i + 1; k < n; ++k) sum -= a[k * n + i] * x[k];
        x[i] = sum / a[i * n + i];
    }
    return true;
}

double cost_of(const std::vector<double>& r) {
    double c = 0.0;
    for (double v : r) c += v * v;
    return c;
}

void clamp_to_bounds(std::vector<double>& p, const std::optional<Bounds>& bounds) {
    if (!bounds) return;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i < bounds->lower.size()) p[i] = std::max(p[i], bounds->lower[i]);
        if (i < bounds->upper.size()) p[i] = std::min(p[i], bounds->upper[i]);
    }
}

}  // namespace

FitReport minimize(const ResidualFn& residual_fn, std::vector<double> initial,
                   const MinimizeOptions& options) {
    const int k = static_cast<int>(initial.size());
    if (k == 0) throw std::invalid_argument("minimize: empty parameter vector");
    clamp_to_bounds(initial, options.bounds);

    std::vector<double> p = initial;
    std::vector<double> r = residual_fn(p);
    const int n = static_cast<int>(r.size());
    if (n < k) throw std::invalid_argument("minimize: residual dimension below parameter dimension");

    double cost = cost_of(r);
    double damping = 0.0;  // pure Gauss-Newton until a step fails
    int iterations = 0;
    bool small_cost_change = false;

    std::vector<double> jac(static_cast<std::size_t>(n) * k);
    std::vector<double> jtj(static_cast<std::size_t>(k) * k);
    std::vector<double> jtr(k), step(k);

    auto build_normal_equations = [&]() {
        for (int j = 0; j < k; ++j) {
            const double h = 1.5e-8 * std::max(std::abs(p[j]), 1.0);
            std::vector<double> pp = p;
            pp[j] += h;
            const std::vector<double> rp = residual_fn(pp);
            for (int i = 0; i < n; ++i) jac[static_cast<std::size_t>(i) * k + j] = (rp[i] - r[i]) / h;
        }
        for (int a = 0; a < k; ++a) {
            jtr[a] = 0.0;
            for (int i = 0; i < n; ++i) jtr[a] += jac[static_cast<std::size_t>(i) * k + a] * r[i];
            for (int b = 0; b <= a; ++b) {
                double sum = 0.0;
                for (int i = 0; i < n; ++i)
                    sum += jac[static_cast<std::size_t>(i) * k + a] * jac[static_cast<std::size_t>(i) * k + b];
                jtj[static_cast<std::size_t>(a) * k + b] = sum;
                jtj[static_cast<std::size_t>(b) * k + a] = sum;
            }
        }
    };

    build_normal_equations();
    while (iterations < options.max_iterations) {
        ++iterations;
        std::vector<double> neg_jtr(k);
        for (int i = 0; i < k; ++i) neg_jtr[i] = -jtr[i];

        bool solved = solve_damped(jtj, k, damping, neg_jtr, step);
        while (!solved && damping < 1e14) {
            damping = damping == 0.0 ? 1e-6 : damping * 10.0;
            solved = solve_damped(jtj, k, damping, neg_jtr, step);
        }
        if (!solved)
            throw std::runtime_error("minimize: singular normal equations beyond damping repair");

        std::vector<double> trial = p;
        for (int i = 0; i < k; ++i) trial[i] += step[i];
        clamp_to_bounds(trial, options.bounds);
        const std::vector<double> r_trial = residual_fn(trial);
        const double cost_trial = cost_of(r_trial);

        if (cost_trial <= cost) {
            const double rel_change = (cost - cost_trial) / std::max(cost, 1e-300);
            p = trial;
            r = r_trial;
            cost = cost_trial;
            damping = damping < 1e-12 ? 0.0 : damping / 3.0;
            build_normal_equations();
            if (rel_change < options.cost_tolerance) {
                small_cost_change = true;
                break;
            }
        } else {
            damping = damping == 0.0 ? 1e-6 : damping * 10.0;
            if (damping > 1e14) break;  // stuck; flagged below
        }
    }

    double grad_inf = 0.0;
    for (int i = 0; i < k; ++i) grad_inf = std::max(grad_inf, std::abs(jtr[i]));

    FitReport report;
    report.iterations = iterations;
    report.converged =
        small_cost_change && grad_inf <= options.gradient_tolerance * std::max(1.0, cost);
    const int dof = std::max(n - k, 1);
    report.reduced_chi2 = cost / dof;

    // sigmas from the undamped inverse normal matrix, scaled by reduced chi2
    std::vector<double> sigma(k, 0.0);
    for (int j = 0; j < k; ++j) {
        std::vector<double> e(k, 0.0), col(k, 0.0);
        e[j] = 1.0;
        if (solve_damped(jtj, k, 0.0, e, col) && col[j] > 0.0)
            sigma[j] = std::sqrt(col[j] * report.reduced_chi2);
    }
    for (int i = 0; i < k; ++i) {
        const std::string name =
            i < static_cast<int>(options.names.size()) ? options.names[i] : "p" + std::to_string(i);
        report.parameters[name] = p[i];
        report.sigmas[name] = sigma[i];
    }
    return report;
}

FitReport fit_lifetime(const dynamics::Histogram& hist, double skip_ns, LifetimeModel model) {
    if (skip_ns < 0.0) throw std::invalid_argument("fit_lifetime: skip_ns must be >= 0");
    std::vector<double> t, c;
    for (std::size_t i = 0; i < hist.counts.size(); ++i) {
        if (hist.bin_edges_ns[i] >= skip_ns) {
            t.push_back(0.5 * (hist.bin_edges_ns[i] + hist.bin_edges_ns[i + 1]));
            c.push_back(static_cast<double>(hist.counts[i]));
        }
    }
    if (t.size() < 5) throw std::runtime_error("fit_lifetime: fewer than 5 bins after the skip window");
    if (std::all_of(c.begin(), c.end(), [](double v) { return v == 0.0; }))
        throw std::runtime_error("fit_lifetime: all counts in the fit window are zero");

    // reference time to the first included bin so a shifted time origin maps
    // to the identical internal problem; the amplitude is converted back at
    // the end
    const double t0 = t.front();
    for (double& ti : t) ti -= t0;

    // weighted log-linear regression for the starting point
    double sw = 0.0, swt = 0.0, swy = 0.0, swtt = 0.0, swty = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (c[i] <= 0.0) continue;
        const double w = c[i];
        const double y = std::log(c[i]);
        sw += w;
        swt += w * t[i];
        swy += w * y;
        swtt += w * t[i] * t[i];
        swty += w * t[i] * y;
    }
    const double denom = sw * swtt - swt * swt;
    double slope = denom != 0.0 ? (sw * swty - swt * swy) / denom : -0.1;
    if (slope >= 0.0) slope = -1e-3;
    double tau0 = -1.0 / slope;
    double amp0 = std::exp((swy - slope * swt) / std::max(sw, 1e-300));

    const bool with_constant = model == LifetimeModel::single_exp_plus_constant;
    auto residual = [&](const std::vector<double>& p) {
        std::vector<double> r(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) {
            double m = p[0] * std::exp(-t[i] / p[1]);
            if (with_constant) m += p[2];
            r[i] = (m - c[i]) / std::sqrt(std::max(c[i], 1.0));
        }
        return r;
    };

    MinimizeOptions options;
    options.names = {"amplitude", "tau_ns"};
    std::vector<double> initial = {amp0, tau0};
    Bounds bounds;
    bounds.lower = {0.0, 1e-9};
    bounds.upper = {std::numeric_limits<double>::infinity(),
                    std::numeric_limits<double>::infinity()};
    if (with_constant) {
        options.names.push_back("constant");
        initial.push_back(*std::min_element(c.begin(), c.end()));
        bounds.lower.push_back(0.0);
        bounds.upper.push_back(std::numeric_limits<double>::infinity());
    }
    options.bounds = bounds;
    FitReport report = minimize(residual, initial, options);
    // undo the internal time shift: amplitude referenced back to t = 0
    const double tau_hat = report.parameters.at("tau_ns");
    report.parameters.at("amplitude") *= std::exp(t0 / tau_hat);
    report.sigmas.at("amplitude") *= std::exp(t0 / tau_hat);
    return report;
}

std::vector<double> detuning_model_lifetimes(const std::vector<double>& detunings_nm,
                                             const EmitterTransition& emitter,
                                             const DetuningFitConfig& config,
                                             double tau0_ns, double peak_f1, double peak_f2,
                                             double center_offset_nm) {
    EmitterTransition trial = emitter;
    trial.bulk_lifetime_ns = tau0_ns;
    CavityMode c1, c2;
    c1.wavelength_nm = emitter.wavelength_nm - config.mode_spacing_nm;
    c1.quality_factor = config.q1;
    c1.mode_volume_cubic_lambda_over_n = 1.0;
    c2.wavelength_nm = emitter.wavelength_nm;
    c2.quality_factor = config.q2;
    c2.mode_volume_cubic_lambda_over_n = 1.0;

    std::vector<double> shifted(detunings_nm.size());
    for (std::size_t i = 0; i < detunings_nm.size(); ++i)
        shifted[i] = detunings_nm[i] - center_offset_nm;
    const dynamics::DetuningScan scan = dynamics::lifetime_vs_detuning(
        trial, {c1, c2}, {peak_f1, peak_f2}, shifted);
    std::vector<double> out(scan.points.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = scan.points[i].lifetime_ns;
    return out;
}

FitReport fit_detuning_scan(const dynamics::DetuningScan& scan,
                            const EmitterTransition& emitter,
                            const DetuningFitConfig& config) {
    const std::size_t n = scan.points.size();
    const std::size_t n_free = config.float_qs ? 6 : 4;
    if (n < n_free) throw std::runtime_error("fit_detuning_scan: fewer points than free parameters");
    std::vector<double> dets(n), life(n), weight(n);
    for (std::size_t i = 0; i < n; ++i) {
        dets[i] = scan.points[i].detuning_nm;
        life[i] = scan.points[i].lifetime_ns;
        weight[i] = scan.points[i].sigma_ns > 0.0 ? 1.0 / scan.points[i].sigma_ns
                                                  : 1.0 / std::max(life[i], 1e-12);
    }
    if (*std::max_element(dets.begin(), dets.end()) ==
        *std::min_element(dets.begin(), dets.end()))
        throw std::runtime_error("fit_detuning_scan: degenerate scan (all detunings equal)");

    // starting point from the data: baseline lifetime plus dip depths read
    // off near an assumed center offset
    const double tau0_guess = *std::max_element(life.begin(), life.end());
    std::size_t i_min = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (life[i] < life[i_min]) i_min = i;
    const double xi = emitter.zpl_branching_ratio;
    auto dip_f = [&](double where, double fallback) {
        double best_dist = std::max(0.25 * config.mode_spacing_nm, 1e-9);
        double f = fallback;
        for (std::size_t i = 0; i < n; ++i) {
            if (std::abs(dets[i] - where) < best_dist) {
                best_dist = std::abs(dets[i] - where);
                f = std::max((tau0_guess / std::max(life[i], 1e-12) - 1.0) / xi, 0.05);
            }
        }
        return f;
    };
    auto make_start = [&](double off0) {
        const double f2_0 = dip_f(off0, 0.1);
        const double f1_0 = dip_f(off0 + config.mode_spacing_nm, 0.5 * f2_0);
        return std::vector<double>{tau0_guess, f1_0, f2_0, off0};
    };

    auto residual = [&](const std::vector<double>& p) {
        DetuningFitConfig trial_cfg = config;
        if (config.float_qs) {
            trial_cfg.q1 = p[4];
            trial_cfg.q2 = p[5];
        }
        const std::vector<double> model =
            detuning_model_lifetimes(dets, emitter, trial_cfg, p[0], p[1], p[2], p[3]);
        std::vector<double> r(n);
        for (std::size_t i = 0; i < n; ++i) r[i] = (model[i] - life[i]) * weight[i];
        return r;
    };

    MinimizeOptions options;
    options.names = {"tau0_ns", "peak_f1", "peak_f2", "center_offset_nm"};
    Bounds bounds;
    bounds.lower = {1e-6, 0.0, 0.0, -std::numeric_limits<double>::infinity()};
    bounds.upper = std::vector<double>(4, std::numeric_limits<double>::infinity());
    if (config.float_qs) {
        options.names.push_back("q1");
        options.names.push_back("q2");
        bounds.lower.push_back(1.0);
        bounds.lower.push_back(1.0);
        bounds.upper.push_back(std::numeric_limits<double>::infinity());
        bounds.upper.push_back(std::numeric_limits<double>::infinity());
    }
    options.bounds = bounds;

    // The deepest dip may belong to either mode; try both hypotheses and
    // keep the better fit.
    std::optional<FitReport> best;
    for (double off0 : {dets[i_min], dets[i_min] - config.mode_spacing_nm}) {
        std::vector<double> initial = make_start(off0);
        if (config.float_qs) {
            initial.push_back(config.q1);
            initial.push_back(config.q2);
        }
        const FitReport report = minimize(residual, initial, options);
        if (!best || report.reduced_chi2 < best->reduced_chi2) best = report;
    }
    return *best;
}

}  // namespace purcellkit::fit
