#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "purcellkit/dynamics.hpp"

using namespace purcellkit;
using namespace purcellkit::dynamics;

namespace {

EmitterTransition nv1() {
    EmitterTransition e;
    e.wavelength_nm = 637.0;
    e.bulk_lifetime_ns = 11.1;
    e.zpl_branching_ratio = 0.03;
    e.leak_ratio = 1.0;
    e.geometry.overlap_eta = 1.0;
    return e;
}

CavityMode bare(double lam, double q) {
    CavityMode m;
    m.wavelength_nm = lam;
    m.quality_factor = q;
    m.mode_volume_cubic_lambda_over_n = 1.0;
    return m;
}

// test-side oracle: maximum-likelihood tau for an exponential truncated to
// [0, span), solved on the mean-equation by bisection
double truncated_mle(const std::vector<double>& times, double span) {
    const double mean = std::accumulate(times.begin(), times.end(), 0.0) / times.size();
    double lo = 1e-3, hi = 1e4;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (truncated_exponential_mean(mid, span) < mean) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("coupled lifetime") {
    CHECK(coupled_lifetime(nv1(), 11.244897959183673) == doctest::Approx(8.3).epsilon(1e-12));
    CHECK(coupled_lifetime(nv1(), 0.0) == 11.1);
    CHECK(coupled_lifetime(nv1(), 1e9) < 1e-6 * 11.1);
    CHECK_THROWS_AS(coupled_lifetime(nv1(), -0.5), std::invalid_argument);
}

TEST_CASE("coupled lifetime is strictly decreasing and continuous in F") {
    double prev = coupled_lifetime(nv1(), 0.0);
    for (double f = 0.01; f < 1e4; f *= 1.15) {
        const double tau = coupled_lifetime(nv1(), f);
        CHECK(tau < prev);
        CHECK(prev - tau < 0.2 * prev);  // no jumps on this grid
        prev = tau;
    }
}

TEST_CASE("detuning scan basics") {
    const std::vector<CavityMode> modes = {bare(636.4, 4300.0), bare(637.0, 3800.0)};
    const std::vector<double> peak_f = {4.0, 11.24};

    // far detuned: 50+ linewidths leave the bulk lifetime intact to 0.5%
    const DetuningScan far = lifetime_vs_detuning(nv1(), modes, peak_f, {-15.0, 20.0});
    for (const auto& pt : far.points)
        CHECK(std::abs(pt.lifetime_ns - 11.1) <= 0.005 * 11.1);

    // on the reference-mode resonance the coupled lifetime appears
    const DetuningScan on = lifetime_vs_detuning(nv1(), modes, peak_f, {0.0});
    CHECK(on.points[0].lifetime_ns == doctest::Approx(8.3).epsilon(0.005));
    CHECK(on.reference_mode_spacing_nm == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(on.points[0].sigma_ns == 0.0);

    CHECK_THROWS_AS(lifetime_vs_detuning(nv1(), modes, {1.0}, {0.0}), std::invalid_argument);
}

TEST_CASE("scan shows two minima one spacing apart") {
    const std::vector<CavityMode> modes = {bare(636.4, 4300.0), bare(637.0, 3800.0)};
    const std::vector<double> peak_f = {4.0, 11.24};
    std::vector<double> dets;
    for (double d = -0.5; d <= 1.1; d += 0.005) dets.push_back(d);
    const DetuningScan scan = lifetime_vs_detuning(nv1(), modes, peak_f, dets);

    std::vector<std::size_t> minima;
    for (std::size_t i = 1; i + 1 < scan.points.size(); ++i) {
        if (scan.points[i].lifetime_ns < scan.points[i - 1].lifetime_ns &&
            scan.points[i].lifetime_ns < scan.points[i + 1].lifetime_ns)
            minima.push_back(i);
    }
    REQUIRE(minima.size() == 2);
    const double gap = scan.points[minima[1]].detuning_nm - scan.points[minima[0]].detuning_nm;
    CHECK(gap == doctest::Approx(0.6).epsilon(0.02));
}

TEST_CASE("zero spacing with equal peaks degenerates to a doubled single mode") {
    std::vector<double> dets;
    for (double d = -0.4; d <= 0.4; d += 0.01) dets.push_back(d);
    const auto twin =
        lifetime_vs_detuning(nv1(), {bare(637.0, 3800.0), bare(637.0, 3800.0)}, {5.0, 5.0}, dets);
    const auto single = lifetime_vs_detuning(nv1(), {bare(637.0, 3800.0)}, {10.0}, dets);
    for (std::size_t i = 0; i < dets.size(); ++i)
        CHECK(std::abs(twin.points[i].lifetime_ns - single.points[i].lifetime_ns) <=
              1e-9 * single.points[i].lifetime_ns);
}

TEST_CASE("histogram determinism and edge cases") {
    const Contamination none{0.0, 1.0};
    const Histogram a = simulate_histogram(11.1, 20000, 0.2, 4.75, none, 42);
    const Histogram b = simulate_histogram(11.1, 20000, 0.2, 4.75, none, 42);
    CHECK(a.counts == b.counts);
    const Histogram c = simulate_histogram(11.1, 20000, 0.2, 4.75, none, 43);
    CHECK(a.counts != c.counts);

    const Histogram empty = simulate_histogram(11.1, 0, 0.2, 4.75, none, 0);
    for (const auto count : empty.counts) CHECK(count == 0);

    // 0.2 ns does not divide the 210.526 ns period: the final stub is dropped
    CHECK(empty.bin_edges_ns.size() == 1053);
    CHECK(empty.bin_edges_ns.back() <= 1000.0 / 4.75);

    CHECK_THROWS_AS(simulate_histogram(11.1, 10, 300.0, 4.75, none, 0), std::invalid_argument);
    CHECK_THROWS_AS(simulate_histogram(11.1, 10, 0.0, 4.75, none, 0), std::invalid_argument);
    CHECK_THROWS_AS(simulate_histogram(11.1, -1, 0.2, 4.75, none, 0), std::invalid_argument);
    CHECK_THROWS_AS(simulate_histogram(11.1, 10, 0.2, 4.75, Contamination{1.0, 1.0}, 0),
                    std::invalid_argument);
    CHECK_THROWS_AS(simulate_histogram(-1.0, 10, 0.2, 4.75, none, 0), std::invalid_argument);
}

TEST_CASE("histogram counts match the raw arrival times") {
    const Contamination contamination{0.3, 1.0};
    const Histogram hist = simulate_histogram(11.1, 50000, 0.2, 4.75, contamination, 7);
    const auto times = sample_arrival_times(11.1, 50000, 4.75, contamination, 7);
    const double span = hist.bin_edges_ns.back();
    std::int64_t inside = 0;
    for (double t : times) inside += t < span ? 1 : 0;
    CHECK(std::accumulate(hist.counts.begin(), hist.counts.end(), std::int64_t{0}) == inside);
}

TEST_CASE("pure-exponential estimator consistency against the MLE oracle") {
    const auto times = sample_arrival_times(11.1, 1000000, 4.75, {0.0, 1.0}, 0);
    const double tau_hat = truncated_mle(times, 1000.0 / 4.75);
    CHECK(std::abs(tau_hat - 11.1) <= 0.01 * 11.1);
}

TEST_CASE("empirical mean matches the wrapped-exponential analytic mean") {
    const double period = 1000.0 / 4.75;
    const auto times = sample_arrival_times(11.1, 1000000, 4.75, {0.0, 1.0}, 3);
    const double n = static_cast<double>(times.size());
    const double mean = std::accumulate(times.begin(), times.end(), 0.0) / n;
    double var = 0.0;
    for (double t : times) var += (t - mean) * (t - mean);
    var /= n - 1.0;
    const double expected = truncated_exponential_mean(11.1, period);
    CHECK(std::abs(mean - expected) <= 3.0 * std::sqrt(var / n));
}

TEST_CASE("contamination amplitude semantics: mixture mean over 3 sigma") {
    // amplitude fraction a at t=0 means a photon share a*tau_c/(a*tau_c+(1-a)*tau)
    const double period = 1000.0 / 4.75;
    const double share = 0.3 * 1.0 / (0.3 * 1.0 + 0.7 * 11.1);
    const auto times = sample_arrival_times(11.1, 400000, 4.75, {0.3, 1.0}, 11);
    const double n = static_cast<double>(times.size());
    const double mean = std::accumulate(times.begin(), times.end(), 0.0) / n;
    double var = 0.0;
    for (double t : times) var += (t - mean) * (t - mean);
    var /= n - 1.0;
    const double expected = share * truncated_exponential_mean(1.0, period) +
                            (1.0 - share) * truncated_exponential_mean(11.1, period);
    CHECK(std::abs(mean - expected) <= 3.0 * std::sqrt(var / n));
}
