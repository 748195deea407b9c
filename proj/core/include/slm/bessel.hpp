#pragma once

#include <cmath>

#include "slm/math.hpp"

namespace slm {

// Closed forms for the sigma(x) = x^2 diffusion, whose law is the reciprocal
// of a 3-d Bessel process. They anchor the exact Monte Carlo oracle and the
// minimal-solution boundary profiles.

// E[X_T | X_t = x] = x (2 Phi(1/(x sqrt(T-t))) - 1); the minimal solution for
// the identity payoff.
inline double inverse_bessel_minimal_value(double x, double t, double T) {
    if (!(x > 0.0)) return 0.0;
    const double tau = T - t;
    if (!(tau > 0.0)) return x;
    return x * (2.0 * norm_cdf(1.0 / (x * std::sqrt(tau))) - 1.0);
}

// Martingale defect x - E[X_T | X_t = x] = 2 x Phi(-1/(x sqrt(T-t))); vanishes
// at x = 0 and t = T.
inline double inverse_bessel_defect_value(double x, double t, double T) {
    if (!(x > 0.0)) return 0.0;
    const double tau = T - t;
    if (!(tau > 0.0)) return 0.0;
    return 2.0 * x * norm_cdf(-1.0 / (x * std::sqrt(tau)));
}

}  // namespace slm
