#pragma once

// Closed-form boundary Liouville constants for gamma in (sqrt(2), 2):
// the normalized structure constant G-bar at its three special second
// insertions (0, gamma, 4/gamma - gamma), the quantum-disk length-density
// constants E1..E3, the combination E4, and the welding constant C1.
//
// C1 and E4 each have two independent closed forms (a fully reduced one and
// one assembled from G-bar / E2 / E3); both are exposed so they can be
// cross-checked against each other.
//
// Power factors like (2 pi)^(4/g^2 - 1) are assembled in log space before
// exponentiation; they swing over several orders of magnitude as
// gamma -> sqrt(2).

#include <cmath>
#include <numbers>
#include <string>

#include "backbone/errors.hpp"
#include "backbone/specialfn.hpp"

namespace backbone::lcft {

inline constexpr double kPi = std::numbers::pi;

enum class BetaCase { Zero, Gamma, Beta0 };  // beta = 0, gamma, 4/gamma - gamma

namespace detail {

inline void require_gamma(double g) {
    if (!(g > std::sqrt(2.0) && g < 2.0)) {
        throw DomainError("lcft: gamma must lie in (sqrt(2),2), got " + std::to_string(g));
    }
}

} // namespace detail

// G-bar(alpha, beta) for the three beta cases used by the welding identities.
// Domain: alpha in (gamma/2, Q]; the Beta0 case additionally needs its four
// gamma-function arguments off the poles (guaranteed for alpha >= gamma).
inline double gbar(double g, double alpha, BetaCase beta) {
    detail::require_gamma(g);
    const double q_big = 2.0 / g + g / 2.0;
    if (!(alpha > 0.5 * g && alpha <= q_big + 1e-12)) {
        throw DomainError("gbar: alpha must lie in (gamma/2, Q]");
    }
    const double g2 = g * g;
    // log of (2^(-g a/2) 2 pi / G(1 - g^2/4)), raised to 2(Q - alpha)/g
    double log_base = -0.5 * g * alpha * std::numbers::ln2 + std::log(2.0 * kPi) -
                      specialfn::log_gamma(1.0 - 0.25 * g2);
    double base0 = std::exp(log_base * 2.0 * (q_big - alpha) / g) *
                   specialfn::gamma_fn(0.5 * g * alpha - 0.25 * g2);
    switch (beta) {
        case BetaCase::Zero:
            return base0;
        case BetaCase::Gamma:
            return base0 / kPi;
        case BetaCase::Beta0: {
            const double p = 4.0 / g2;
            double log_pref = (3.0 - 0.5 * g2 - p) * std::numbers::ln2 - (p - 1.0) * std::log(kPi) +
                              (p - 1.0) * specialfn::log_gamma(1.0 - 0.25 * g2) +
                              specialfn::log_gamma(0.5 * g2 - 1.0) -
                              specialfn::log_gamma(2.0 - p) - specialfn::log_gamma(0.25 * g2);
            double ratio = specialfn::gamma_fn(2.0 * alpha / g - p) *
                           specialfn::gamma_fn(0.5 * g * alpha + 1.0 - 0.5 * g2) /
                           (specialfn::gamma_fn(2.0 * alpha / g - 1.0) *
                            specialfn::gamma_fn(0.5 * g * alpha - 1.0));
            return std::exp(log_pref) * ratio * base0;
        }
    }
    throw DomainError("gbar: unknown beta case");
}

struct ConstantBundle {
    double gamma;
    double e1, e2, e3, e4, c1;

    double gbar_alpha0(double alpha) const { return gbar(gamma, alpha, BetaCase::Zero); }
    double gbar_alpha_gamma(double alpha) const { return gbar(gamma, alpha, BetaCase::Gamma); }
    double gbar_alpha_beta0(double alpha) const { return gbar(gamma, alpha, BetaCase::Beta0); }
};

inline ConstantBundle constants(double g) {
    detail::require_gamma(g);
    const double g2 = g * g;
    const double p = 4.0 / g2;
    const double q_big = 2.0 / g + g / 2.0;
    const double log2pi = std::log(2.0 * kPi);
    const double lg_one_minus = specialfn::log_gamma(1.0 - 0.25 * g2);

    double e1 = std::exp((p - 1.0) * log2pi - std::log(1.0 - 0.25 * g2) - p * lg_one_minus);
    double e2 = std::exp(specialfn::log_gamma(0.25 * g2) - std::log(4.0 * kPi) -
                         2.0 * std::log(q_big - g) + (p - 1.0) * (log2pi - lg_one_minus));
    double e3 = std::exp((1.0 - p) * log2pi + p * lg_one_minus - specialfn::log_gamma(2.0 - p));
    // G(p-2) is negative for p in (1,2), making e4 < 0.
    double e4 = e1 * e3 * e3 * g /
                (2.0 * specialfn::gamma_fn(p - 2.0) * specialfn::gamma_fn(p + 1.0));
    double c1 = kPi * std::exp((1.0 - 0.5 * g2) * std::numbers::ln2) * (g2 - 4.0) * (g2 - 4.0) *
                std::sin(0.25 * kPi * g2) / (g * g2 * std::sin(-kPi * p));
    return {g, e1, e2, e3, e4, c1};
}

// Reduced alternative for E4 (sign carried by the leading minus):
//   -(2 pi)^(-1-4/g^2) 4 g^3 (g^2-2) sin^2(4 pi/g^2) G(1-g^2/4)^(4/g^2) / (g^2-4)^2
inline double e4_simplified(double g) {
    detail::require_gamma(g);
    const double g2 = g * g;
    const double p = 4.0 / g2;
    double s = std::sin(kPi * p);
    return -std::exp((-1.0 - p) * std::log(2.0 * kPi) + p * specialfn::log_gamma(1.0 - 0.25 * g2)) *
           4.0 * g * g2 * (g2 - 2.0) * s * s / ((g2 - 4.0) * (g2 - 4.0));
}

// C1 assembled from its welding ingredients:
//   2^(1-g^2/2) G(4/g^2-1) G-bar(gamma, 4/gamma-gamma) / (E2 E3 gamma)
inline double c1_assembled(double g) {
    ConstantBundle b = constants(g);
    const double g2 = g * g;
    return std::exp((1.0 - 0.5 * g2) * std::numbers::ln2) *
           specialfn::gamma_fn(4.0 / g2 - 1.0) * gbar(g, g, BetaCase::Beta0) /
           (b.e2 * b.e3 * g);
}

} // namespace backbone::lcft
