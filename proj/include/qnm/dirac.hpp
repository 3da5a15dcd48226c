#pragma once
// The two finite-width Dirac-delta models of the Markovian-limit bookkeeping
// and the raw window kernel sin(tau x)/x whose square carries mass pi*tau.

#include <cmath>
#include <numbers>

namespace qnm {

// delta1_tau(x) = sin(tau x)/(pi x), unit mass.
inline double dirichlet_delta(double tau, double x) {
    if (std::abs(x) < 1e-12) return tau / std::numbers::pi;
    return std::sin(tau * x) / (std::numbers::pi * x);
}

// delta2_tau(x) = sin^2(tau x)/(pi tau x^2), unit mass.
inline double fejer_delta(double tau, double x) {
    if (std::abs(x) < 1e-12) return tau / std::numbers::pi;
    const double s = std::sin(tau * x);
    return s * s / (std::numbers::pi * tau * x * x);
}

// sin(tau x)/x: the kernel that actually shows up in windowed |Y|^2 products;
// its square equals pi*tau*delta2 identically.
inline double window_kernel(double tau, double x) {
    if (std::abs(x) < 1e-12) return tau;
    return std::sin(tau * x) / x;
}

}  // namespace qnm
