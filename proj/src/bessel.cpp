#include "purcellkit/bessel.hpp"

#include <cmath>
#include <stdexcept>

namespace purcellkit::wgm {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kEulerGamma = 0.57721566490153286061;
// power series below this x, Hankel asymptotics above
constexpr double kSeriesLimit = 14.0;

double j0_series(double x) {
    const double q = 0.25 * x * x;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 80; ++k) {
        term *= -q / (static_cast<double>(k) * k);
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

double j1_series(double x) {
    const double q = 0.25 * x * x;
    double term = 0.5 * x, sum = term;
    for (int k = 1; k < 80; ++k) {
        term *= -q / (static_cast<double>(k) * (k + 1));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
}

// P, Q factors of the large-argument expansion for orders 0 and 1; the
// series is summed until its terms stop decreasing, which is far below
// 1e-12 for x > 14.
void hankel_pq(int order, double x, double& p, double& q) {
    const double mu = 4.0 * order * order;
    const double z = 64.0 * x * x;
    p = 1.0;
    q = (mu - 1.0) / (8.0 * x);
    double tp = 1.0, tq = q;
    for (int k = 1; k < 40; ++k) {
        const double a = mu - (4.0 * k - 3.0) * (4.0 * k - 3.0);
        const double b = mu - (4.0 * k - 1.0) * (4.0 * k - 1.0);
        const double c = mu - (4.0 * k + 1.0) * (4.0 * k + 1.0);
        const double tpn = -tp * a * b / ((2.0 * k - 1.0) * (2.0 * k) * z);
        const double tqn = -tq * b * c / ((2.0 * k) * (2.0 * k + 1.0) * z);
        if (std::abs(tpn) > std::abs(tp) || std::abs(tqn) > std::abs(tq)) break;
        p += tpn;
        q += tqn;
        tp = tpn;
        tq = tqn;
        if (std::abs(tp) < 1e-18 && std::abs(tq) < 1e-18) break;
    }
}

double j01_asymptotic(int order, double x) {
    double p, q;
    hankel_pq(order, x, p, q);
    const double chi = x - (0.5 * order + 0.25) * kPi;
    return std::sqrt(2.0 / (kPi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

double y01_asymptotic(int order, double x) {
    double p, q;
    hankel_pq(order, x, p, q);
    const double chi = x - (0.5 * order + 0.25) * kPi;
    return std::sqrt(2.0 / (kPi * x)) * (p * std::sin(chi) + q * std::cos(chi));
}

double j0(double x) { return x <= kSeriesLimit ? j0_series(x) : j01_asymptotic(0, x); }
double j1(double x) { return x <= kSeriesLimit ? j1_series(x) : j01_asymptotic(1, x); }

double y0(double x) {
    if (x > kSeriesLimit) return y01_asymptotic(0, x);
    const double q = 0.25 * x * x;
    double term = 1.0, harmonic = 0.0, sum = 0.0;
    for (int k = 1; k < 80; ++k) {
        term *= -q / (static_cast<double>(k) * k);
        harmonic += 1.0 / k;
        sum -= term * harmonic;
        if (std::abs(term) < 1e-18) break;
    }
    return (2.0 / kPi) * ((std::log(0.5 * x) + kEulerGamma) * j0_series(x) + sum);
}

double y1(double x) {
    if (x > kSeriesLimit) return y01_asymptotic(1, x);
    const double q = 0.25 * x * x;
    double term = 1.0, hk = 0.0, hk1 = 1.0;
    double sum = term * (hk + hk1);
    for (int k = 1; k < 80; ++k) {
        term *= -q / (static_cast<double>(k) * (k + 1));
        hk += 1.0 / k;
        hk1 += 1.0 / (k + 1);
        sum += term * (hk + hk1);
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return (2.0 / kPi) * (std::log(0.5 * x) + kEulerGamma) * j1_series(x) -
           2.0 / (kPi * x) - x / (2.0 * kPi) * sum;
}

// Miller downward recurrence normalized by J_0 + 2 sum J_{2k} = 1; needed
// when order > x where upward recurrence is unstable.
double j_miller(int order, double x) {
    int start = order + static_cast<int>(std::sqrt(60.0 * std::max(order, 10))) + 14;
    if (start % 2 != 0) ++start;
    double prev = 0.0, cur = 1e-30;
    double norm = 0.0, result = 0.0;
    for (int k = start; k >= 1; --k) {
        const double next = (2.0 * k / x) * cur - prev;
        prev = cur;
        cur = next;  // cur is now the unnormalized J_{k-1}
        if (std::abs(cur) > 1e250) {
            cur *= 1e-250;
            prev *= 1e-250;
            norm *= 1e-250;
            result *= 1e-250;
        }
        const int idx = k - 1;
        if (idx > 0 && idx % 2 == 0) norm += 2.0 * cur;
        if (idx == order) result = cur;
    }
    norm += cur;  // the J_0 term
    return result / norm;
}

}  // namespace

double bessel_j(int order, double x) {
    if (order < 0 || x < 0.0) throw std::invalid_argument("bessel_j: order >= 0, x >= 0 required");
    if (x == 0.0) return order == 0 ? 1.0 : 0.0;
    if (order == 0) return j0(x);
    if (order == 1) return j1(x);
    if (x > order) {
        double prev = j0(x), cur = j1(x);
        for (int k = 1; k < order; ++k) {
            const double next = (2.0 * k / x) * cur - prev;
            prev = cur;
            cur = next;
        }
        return cur;
    }
    return j_miller(order, x);
}

double bessel_y(int order, double x) {
    if (order < 0) throw std::invalid_argument("bessel_y: order >= 0 required");
    if (x <= 0.0) throw std::domain_error("bessel_y: x > 0 required");
    double prev = y0(x);
    if (order == 0) return prev;
    double cur = y1(x);
    for (int k = 1; k < order; ++k) {
        const double next = (2.0 * k / x) * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

double bessel_j_prime(int order, double x) {
    if (order == 0) return -bessel_j(1, x);
    if (x == 0.0) return order == 1 ? 0.5 : 0.0;
    return 0.5 * (bessel_j(order - 1, x) - bessel_j(order + 1, x));
}

double bessel_y_prime(int order, double x) {
    if (order == 0) return -bessel_y(1, x);
    return 0.5 * (bessel_y(order - 1, x) - bessel_y(order + 1, x));
}

}  // namespace purcellkit::wgm
