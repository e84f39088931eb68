#pragma once

// Cylinder functions for the radial characteristic equation, implemented
// in-repo: power series and large-argument asymptotics for orders 0/1,
// Miller downward recurrence with even-sum normalization for J at high
// order, upward recurrence for Y. Double-precision accurate over
// order <= 100, x <= 200 (relative to the oscillation envelope near zeros).

namespace purcellkit::wgm {

// Regular Bessel function of the first kind, order >= 0, x >= 0.
double bessel_j(int order, double x);

// Bessel function of the second kind, order >= 0; throws std::domain_error
// for x <= 0.
double bessel_y(int order, double x);

// Derivatives via the standard recurrence 2 Z' = Z_{n-1} - Z_{n+1}.
double bessel_j_prime(int order, double x);
double bessel_y_prime(int order, double x);

}  // namespace purcellkit::wgm
