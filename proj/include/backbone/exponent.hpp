#pragma once

// Exact solution of the backbone-exponent equation for SLE parameter
// kappa in (4,8):
//
//     sin(8 pi / k) * rho - sin(8 pi rho / k) = 0,
//     rho = sqrt(k x / 2 + (1 - k/4)^2),   x in (0, 1 - 2/k).
//
// rho = 1 solves the equation identically for every k (it corresponds to
// x = 1 - k/8, the polychromatic two-arm value); the backbone exponent is
// the other root.  At k = k0, the unique solution of tan(8 pi/k0) = 8 pi/k0
// in (4,8), the two roots collide in a double root at rho = 1.
//
// Related maps: the FK cluster weight q in (0,4] corresponds to
// k = 4 pi / (pi - arccos(sqrt(q)/2)), and Delta_alpha = (a/2)(Q - a/2)
// is the LQG scaling exponent.

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "backbone/errors.hpp"
#include "backbone/rootfind.hpp"

namespace backbone::exponent {

inline constexpr double kPi = std::numbers::pi;

// Validated (kappa, gamma = 4/sqrt(kappa), Q = 2/gamma + gamma/2) bundle.
struct KappaParams {
    double kappa;
    double gamma;
    double q_big;

    static KappaParams from_kappa(double kappa) {
        if (!(kappa > 4.0 && kappa < 8.0)) {
            throw DomainError("KappaParams: kappa must lie in (4,8), got " + std::to_string(kappa));
        }
        double gamma = 4.0 / std::sqrt(kappa);
        return {kappa, gamma, 2.0 / gamma + gamma / 2.0};
    }

    static KappaParams from_gamma(double gamma) {
        if (!(gamma > std::sqrt(2.0) && gamma < 2.0)) {
            throw DomainError("KappaParams: gamma must lie in (sqrt(2),2), got " + std::to_string(gamma));
        }
        return {16.0 / (gamma * gamma), gamma, 2.0 / gamma + gamma / 2.0};
    }
};

struct ExponentSolution {
    double kappa;
    double xi;
    double rho;       // sqrt(k xi/2 + (1-k/4)^2)
    double residual;  // g(rho) at the returned root
    std::pair<double, double> bracket;
    bool degenerate;  // double root at rho = 1 (kappa at k0)
};

// g(rho) = sin(8 pi/k) rho - sin(8 pi rho/k)
inline double backbone_g(double kappa, double rho) {
    double u = 8.0 * kPi / kappa;
    return std::sin(u) * rho - std::sin(u * rho);
}

namespace detail {

// g with the always-present root at rho = 1 divided out; continuous at 1.
inline double backbone_g_reduced(double kappa, double rho) {
    double u = 8.0 * kPi / kappa;
    double d = rho - 1.0;
    if (std::abs(d) < 1e-8) {
        // g(1+d)/d = g'(1) + g''(1) d/2 + g'''(1) d^2/6
        double gp = std::sin(u) - u * std::cos(u * rho);
        double gpp = u * u * std::sin(u * rho);
        return gp + 0.5 * gpp * d;
    }
    return backbone_g(kappa, rho) / d;
}

} // namespace detail

// Unique k0 in (4,8) with tan(8 pi/k0) = 8 pi/k0.  Solved as
// sin(w) - w cos(w) = 0 for w = 8 pi/k in (pi, 3 pi/2).
inline double solve_kappa0() {
    static const double cached = [] {
        auto f = [](double w) { return std::sin(w) - w * std::cos(w); };
        double w = rootfind::bisect(f, kPi, 1.5 * kPi, 1e-15);
        return 8.0 * kPi / w;
    }();
    return cached;
}

// FK cluster weight q in (0,4] -> kappa = 4 pi/(pi - arccos(sqrt(q)/2)).
// Decreasing in q; the endpoints are q -> 0+ (kappa -> 8-) and q = 4
// (kappa = 4 exactly).
inline double kappa_from_q(double q) {
    if (!(q > 0.0 && q <= 4.0)) {
        throw DomainError("kappa_from_q: q must lie in (0,4], got " + std::to_string(q));
    }
    return 4.0 * kPi / (kPi - std::acos(std::sqrt(q) / 2.0));
}

inline ExponentSolution solve_xi(double kappa) {
    if (!(kappa > 4.0 && kappa < 8.0)) {
        throw DomainError("solve_xi: kappa must lie in (4,8), got " + std::to_string(kappa));
    }
    if (std::abs(kappa - 8.0) < 1e-9) {
        throw DomainError("solve_xi: kappa too close to 8");
    }
    const double a = kappa / 4.0 - 1.0;
    const double rho_max = std::sqrt(kappa / 2.0 - 1.0 + a * a);
    const double kappa0 = solve_kappa0();

    auto degenerate_solution = [&](std::pair<double, double> br) {
        double xi = 1.0 - kappa / 8.0;
        return ExponentSolution{kappa, xi, 1.0, backbone_g(kappa, 1.0), br, true};
    };
    if (std::abs(kappa - kappa0) < 1e-7) {
        return degenerate_solution({1.0, 1.0});
    }

    auto h = [&](double rho) { return detail::backbone_g_reduced(kappa, rho); };
    const double step = 1e-4;
    auto brackets = rootfind::scan_sign_changes(h, a + step * 0.5, rho_max, step);
    if (brackets.empty()) {
        throw RootNotFoundError("solve_xi: no non-trivial root located for kappa = " + std::to_string(kappa));
    }
    // The reduced function has a single root (the collision at rho = 1 is
    // handled above); keep the bracket farthest from 1 if several appear.
    auto pick = brackets.front();
    double best = -1.0;
    for (const auto& b : brackets) {
        double mid = 0.5 * (b.lo + b.hi);
        double d = std::abs(mid - 1.0);
        if (d > best) {
            best = d;
            pick = b;
        }
    }
    double rho = rootfind::bisect(h, pick.lo, pick.hi, 1e-14);
    if (std::abs(rho - 1.0) < 1e-6) {
        return degenerate_solution({pick.lo, pick.hi});
    }
    double xi = (rho * rho - a * a) * 2.0 / kappa;
    return ExponentSolution{kappa, xi, rho, backbone_g(kappa, rho), {pick.lo, pick.hi}, false};
}

// LQG scaling exponent Delta_alpha = (a/2)(Q - a/2).
inline double delta_alpha(double alpha, const KappaParams& p) {
    return 0.5 * alpha * (p.q_big - 0.5 * alpha);
}

struct TableRow {
    double q;
    double kappa;
    double xi;
};

// The (q, kappa, xi) table for q in {1, 2, 3, 2+sqrt(3), 4}.  The q = 4 row
// is the one-sided limit kappa -> 4+, evaluated at kappa = 4 + 1e-8.
inline std::vector<TableRow> exponent_table() {
    std::vector<TableRow> rows;
    const double qs[] = {1.0, 2.0, 3.0, 2.0 + std::sqrt(3.0), 4.0};
    for (double q : qs) {
        double kappa = kappa_from_q(q);
        if (q == 4.0) kappa = 4.0 + 1e-8;
        rows.push_back({q, kappa, solve_xi(kappa).xi});
    }
    return rows;
}

} // namespace backbone::exponent
