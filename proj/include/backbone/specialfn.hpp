#pragma once

// Real and complex special functions: log-gamma, gamma, digamma.
//
// log_gamma uses the Lanczos rational approximation (g = 607/128, 15 terms)
// on Re z >= 0.5.  For Re z < 0.5 the argument is shifted upward through the
// recurrence log G(z) = log G(z+m) - sum log(z+k), which keeps the principal
// branch on the right half-plane and guarantees exp(log_gamma(z)) = Gamma(z)
// everywhere off the poles.
//
// digamma runs the recurrence psi(x) = psi(x+1) - 1/x up to x >= 8, then the
// asymptotic series with Bernoulli terms through x^-14 (truncation < 2e-15
// at x = 8).

#include <cmath>
#include <complex>
#include <numbers>

#include "backbone/errors.hpp"

namespace backbone::specialfn {

using Complex = std::complex<double>;

inline constexpr double kPoleTol = 1e-12;

namespace detail {

// Lanczos coefficients for g = 607/128 (Godfrey).
inline constexpr double kLanczosG = 607.0 / 128.0;
inline constexpr double kLanczos[15] = {
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
};

// Core Lanczos evaluation, valid for Re z >= 0.5.
template <class T>
T log_gamma_lanczos(T z) {
    constexpr double half_log_two_pi = 0.91893853320467274178;
    T zm1 = z - 1.0;
    T series = T(kLanczos[0]);
    for (int i = 1; i < 15; ++i) series += kLanczos[i] / (zm1 + double(i));
    T t = zm1 + kLanczosG + 0.5;
    return half_log_two_pi + (zm1 + 0.5) * std::log(t) - t + std::log(series);
}

inline bool near_nonpositive_integer(double x, double tol) {
    if (x > 0.5) return false;
    return std::abs(x - std::round(x)) < tol;
}

} // namespace detail

// Principal-branch complex log-gamma; exp of the result equals Gamma(z).
inline Complex log_gamma(Complex z) {
    if (std::abs(z.imag()) < kPoleTol &&
        detail::near_nonpositive_integer(z.real(), kPoleTol)) {
        throw PoleError("log_gamma: argument within 1e-12 of a non-positive integer");
    }
    if (z.real() >= 0.5) return detail::log_gamma_lanczos(z);
    int m = static_cast<int>(std::ceil(0.5 - z.real()));
    Complex shift_sum = 0.0;
    for (int k = 0; k < m; ++k) shift_sum += std::log(z + double(k));
    return detail::log_gamma_lanczos(z + double(m)) - shift_sum;
}

// Real log-gamma for x > 0.
inline double log_gamma(double x) {
    if (x <= 0.0) {
        throw DomainError("log_gamma(real): requires x > 0; use gamma_fn for x < 0");
    }
    if (x >= 0.5) return detail::log_gamma_lanczos(x);
    return detail::log_gamma_lanczos(x + 1.0) - std::log(x);
}

// Real gamma function on both half-lines (reflection for x < 0.5).
inline double gamma_fn(double x) {
    if (detail::near_nonpositive_integer(x, kPoleTol)) {
        throw PoleError("gamma_fn: argument within 1e-12 of a non-positive integer");
    }
    if (x >= 0.5) return std::exp(detail::log_gamma_lanczos(x));
    // Gamma(x) Gamma(1-x) = pi / sin(pi x)
    return std::numbers::pi / (std::sin(std::numbers::pi * x) * std::exp(detail::log_gamma_lanczos(1.0 - x)));
}

// Digamma on the reals (all non-pole arguments).
inline double digamma(double x) {
    if (detail::near_nonpositive_integer(x, kPoleTol)) {
        throw PoleError("digamma: argument within 1e-12 of a non-positive integer");
    }
    double acc = 0.0;
    while (x < 8.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    // psi(x) ~ ln x - 1/(2x) - sum B_{2n} / (2n x^{2n})
    double inv = 1.0 / x, inv2 = inv * inv;
    double series = inv2 * (1.0 / 12.0 +
                    inv2 * (-1.0 / 120.0 +
                    inv2 * (1.0 / 252.0 +
                    inv2 * (-1.0 / 240.0 +
                    inv2 * (1.0 / 132.0 +
                    inv2 * (-691.0 / 32760.0 +
                    inv2 * (1.0 / 12.0)))))));
    return acc + std::log(x) - 0.5 * inv - series;
}

} // namespace backbone::specialfn
