#pragma once

// The SLE bubble moment function
//
//   F(lambda) = 1 + 2 G(4(1-t)/k) G(4(1+t)/k)
//                   / (k cos(4 pi/k) G(8/k - 1) sin(4 pi t/k))
//                   * (sin(8 pi t/k) - t sin(8 pi/k)),
//
// with t^2 = (k/4 - 1)^2 - k lambda / 2, analytic on Re lambda > 2/k - 1.
// The right side is even in t, so the principal square root of t^2 fixes it.
//
// Removable points, both handled by series limits:
//   t -> 0 : sin(8 pi t/k)/sin(4 pi t/k) cancellation,
//   t -> 1 : the G(4(1-t)/k) pole cancels the sine-factor zero; the limit is
//            1 + ((8-k)/k)(1 - (8 pi/k) cot(8 pi/k)), which equals 1 exactly
//            at k = k0 and nowhere else in (4,8).
//
// The same function in LQG variables (gamma = 4/sqrt(k), t = (2/gamma)(Q-a))
// is provided as moment_f_gamma; the two parametrizations agree identically.

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "backbone/errors.hpp"
#include "backbone/exponent.hpp"
#include "backbone/rootfind.hpp"
#include "backbone/specialfn.hpp"

namespace backbone::moment {

using specialfn::Complex;
using exponent::KappaParams;

inline constexpr double kPi = std::numbers::pi;

struct MomentValue {
    Complex lambda;
    double theta_sq;  // Re of (k/4-1)^2 - k lambda/2 (exact for real lambda)
    Complex value;
};

namespace detail {

// Even kernel of F as a function of theta.  Normalizes theta to the
// Re >= 0 half-plane first, so evaluation at -theta is bit-identical.
inline Complex moment_kernel(double kappa, Complex theta) {
    const double u = 8.0 * kPi / kappa;   // 8 pi / k
    const double v = 4.0 * kPi / kappa;   // 4 pi / k
    const double s = std::sin(u);

    if (theta.real() < 0.0 || (theta.real() == 0.0 && theta.imag() < 0.0)) {
        theta = -theta;
    }

    // ratio = (sin(u t) - t sin(u)) / sin(v t), even in t
    Complex ratio;
    if (std::abs(theta) < 1e-4) {
        // series in t^2: (u - s)/v + t^2 ((u - s) v^2 - u^3) / (6 v)
        Complex t2 = theta * theta;
        ratio = (u - s) / v + t2 * ((u - s) * v * v - u * u * u) / (6.0 * v);
    } else {
        ratio = (std::sin(u * theta) - theta * s) / std::sin(v * theta);
    }

    const double lg_denom = specialfn::log_gamma(8.0 / kappa - 1.0);
    Complex one_minus = 4.0 * (1.0 - theta) / kappa;
    Complex one_plus = 4.0 * (1.0 + theta) / kappa;

    if (std::abs(1.0 - theta) < 1e-5) {
        // G(4(1-t)/k) = G(1 + 4(1-t)/k) * k / (4(1-t)); expand the zero of
        // num(t) = sin(u t) - t s against the 1/(1-t) pole.
        Complex d = theta - 1.0;
        double np1 = u * std::cos(u) - s;          // num'(1)
        double np2 = -u * u * std::sin(u);         // num''(1)
        double np3 = -u * u * u * std::cos(u);     // num'''(1)
        Complex num_over = -(np1 + d * (0.5 * np2 + d * np3 / 6.0));  // num/(1-t)
        Complex lg = specialfn::log_gamma(one_minus + 1.0) + specialfn::log_gamma(one_plus) - lg_denom;
        Complex pref = 2.0 * std::exp(lg) * (kappa / 4.0) /
                       (kappa * std::cos(v) * std::sin(v * theta));
        return 1.0 + pref * num_over;
    }

    Complex lg = specialfn::log_gamma(one_minus) + specialfn::log_gamma(one_plus) - lg_denom;
    Complex pref = 2.0 * std::exp(lg) / (kappa * std::cos(v));
    return 1.0 + pref * ratio;
}

} // namespace detail

// Evaluate F(lambda) for complex lambda with Re lambda > 2/k - 1.
inline MomentValue moment_f(const KappaParams& p, Complex lambda) {
    const double boundary = 2.0 / p.kappa - 1.0;
    if (!(lambda.real() > boundary + 1e-10)) {
        throw DomainError("moment_f: Re lambda must exceed 2/kappa - 1 = " + std::to_string(boundary));
    }
    const double a = p.kappa / 4.0 - 1.0;
    Complex theta_sq = a * a - p.kappa * lambda / 2.0;
    Complex theta = std::sqrt(theta_sq);
    Complex value = detail::moment_kernel(p.kappa, theta);
    return {lambda, theta_sq.real(), value};
}

// Real-lambda convenience wrapper: asserts the imaginary residue and
// reports the real part.  The residue bound is relative: near the
// analyticity boundary |F| reaches 1e9 while the residue stays at
// roundoff of that magnitude.
inline double moment_f(const KappaParams& p, double lambda) {
    MomentValue mv = moment_f(p, Complex(lambda, 0.0));
    if (std::abs(mv.value.imag()) >= 1e-9 * std::max(1.0, std::abs(mv.value.real()))) {
        throw NumericalError("moment_f: imaginary residue " + std::to_string(mv.value.imag()) +
                             " exceeds 1e-9 for real lambda");
    }
    return mv.value.real();
}

// Direct access to the even kernel (for symmetry checks).
inline Complex moment_f_at_theta(const KappaParams& p, Complex theta) {
    return detail::moment_kernel(p.kappa, theta);
}

// Same moment in LQG variables: for a in (gamma, Q) and
// t = (2/gamma)(Q - a),
//
//   F = 1 + g^2 G(g^2(1-t)/4) G(g^2(t+1)/4)
//           / (8 cos(pi g^2/4) G(g^2/2 - 1) sin(pi g^2 t/4))
//           * (sin(pi g^2 t/2) - t sin(pi g^2/2)).
//
// Independent transcription kept deliberately separate from moment_f; the
// two must agree because pi g^2/4 = 4 pi/k.
inline double moment_f_gamma(const KappaParams& p, double alpha) {
    const double g = p.gamma;
    if (!(alpha > g && alpha < p.q_big)) {
        throw DomainError("moment_f_gamma: alpha must lie in (gamma, Q)");
    }
    const double g2 = g * g;
    const double theta = (2.0 / g) * (p.q_big - alpha);
    double num = std::sin(0.5 * kPi * g2 * theta) - theta * std::sin(0.5 * kPi * g2);
    double pref = g2 * specialfn::gamma_fn(0.25 * g2 * (1.0 - theta)) *
                  specialfn::gamma_fn(0.25 * g2 * (theta + 1.0)) /
                  (8.0 * std::cos(0.25 * kPi * g2) * specialfn::gamma_fn(0.5 * g2 - 1.0) *
                   std::sin(0.25 * kPi * g2 * theta));
    return 1.0 + pref * num;
}

struct MomentXiResult {
    double xi;
    bool degenerate;  // kappa at k0: F(-x) - 1 is tangent to zero
};

// Solve F(-x) = 1 on (0, 1 - 2/kappa).  The scan+bisection engine is the
// same one used by the direct exponent solver.  x = 1 - k/8 is not a root
// of F - 1 (the formula's sine zero there is eaten by the gamma pole), so
// the only root is the backbone exponent; at k0 the curve is tangent and
// the flagged degenerate value 1 - k/8 is returned.
inline MomentXiResult xi_from_moment(const KappaParams& p) {
    if (std::abs(p.kappa - exponent::solve_kappa0()) < 1e-7) {
        // tangency: F(-x) - 1 touches zero at x = 1 - k/8 without crossing
        return {1.0 - p.kappa / 8.0, true};
    }
    const double hi = 1.0 - 2.0 / p.kappa;
    auto f = [&](double x) { return moment_f(p, -x) - 1.0; };
    const double step = 1e-4;
    auto brackets = rootfind::scan_sign_changes(f, step, hi - step, step);
    if (brackets.empty()) {
        throw RootNotFoundError("xi_from_moment: no root of F(-x) = 1 located");
    }
    double x = rootfind::bisect(f, brackets.front().lo, brackets.front().hi, 1e-13);
    return {x, false};
}

} // namespace backbone::moment
