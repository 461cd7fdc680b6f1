#pragma once

// Named verification suites: each row evaluates one identity, records both
// sides, and passes when the error is under its tolerance.  The CLI prints
// rows; the acceptance harness aggregates them.

#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "backbone/exponent.hpp"
#include "backbone/identity_checks.hpp"
#include "backbone/lcft_constants.hpp"
#include "backbone/moment.hpp"
#include "backbone/numtheory.hpp"

namespace backbone::verify {

struct Row {
    std::string name;
    std::string params;
    double lhs = 0.0;
    double rhs = 0.0;
    double error = 0.0;
    double tol = 0.0;
    bool pass = false;
};

inline Row make_row(std::string name, std::string params, double lhs, double rhs, double err,
                    double tol) {
    return {std::move(name), std::move(params), lhs, rhs, err, tol, err < tol};
}

inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// Integral identities behind the boundary-constant calculus.
// tol_override <= 0 keeps the per-identity defaults.
inline std::vector<Row> integrals_suite(double tol_override = 0.0) {
    std::vector<Row> rows;
    auto tol = [&](double dflt) { return tol_override > 0.0 ? tol_override : dflt; };

    const double dg[5] = {0.3, 0.7, 1.0, 1.7, 2.5};
    for (double a : dg) {
        for (double b : dg) {
            auto r = quadrature::check_digamma_integral(a, b);
            rows.push_back(make_row("digamma-integral", "a=" + fmt(a) + " b=" + fmt(b), r.lhs,
                                    r.rhs, r.abs_err, tol(1e-8)));
        }
    }
    const double ct[5] = {-0.9, -0.7, -0.5, -0.3, -0.1};
    for (double a : ct) {
        for (double b : ct) {
            auto r = quadrature::check_cot_integral(a, b);
            rows.push_back(make_row("cot-integral", "a=" + fmt(a) + " b=" + fmt(b), r.lhs, r.rhs,
                                    r.abs_err, tol(1e-8)));
        }
    }
    for (double g : {1.5, 1.633, 1.8}) {
        double top = 4.0 / (g * g) - 1.0;
        for (double frac : {0.15, 0.3, 0.45, 0.6, 0.75}) {
            double theta = frac * top;
            auto r = quadrature::check_lemma48(g, theta);
            rows.push_back(make_row("sinh-ratio-kernel", "gamma=" + fmt(g) + " theta=" + fmt(theta),
                                    r.lhs, r.rhs, r.abs_err, tol(1e-7)));
        }
    }
    for (auto [mu, theta] : {std::pair{2.0, 0.5}, {0.5, 0.25}, {3.0, 0.7}, {0.1, 0.4},
                             {1.0, 0.4}, {5.0, 0.9}}) {
        auto r = quadrature::check_s_kernel(mu, theta);
        rows.push_back(make_row("s-kernel", "mu=" + fmt(mu) + " theta=" + fmt(theta), r.lhs, r.rhs,
                                r.abs_err, tol(1e-9)));
    }
    for (auto [g, theta] : {std::pair{1.5, 0.5}, {1.633, 0.4}, {1.8, 0.2}}) {
        auto r = quadrature::check_prop47(g, theta);
        rows.push_back(make_row("nested-three-point", "gamma=" + fmt(g) + " theta=" + fmt(theta),
                                r.lhs, r.rhs, r.rel_err, tol(1e-4)));
        double reduced = quadrature::prop47_via_lemma48(g, theta);
        rows.push_back(make_row("nested-vs-reduced", "gamma=" + fmt(g) + " theta=" + fmt(theta),
                                r.lhs, reduced, std::abs(r.lhs - reduced) / std::abs(reduced),
                                tol(1e-4)));
    }
    return rows;
}

// Dual closed forms of the welding constants.
inline std::vector<Row> constants_suite(double tol_override = 0.0) {
    std::vector<Row> rows;
    auto tol = [&](double dflt) { return tol_override > 0.0 ? tol_override : dflt; };
    const double lo = std::sqrt(2.0) + 1e-3, hi = 2.0 - 1e-3;
    for (int i = 0; i < 50; ++i) {
        double g = lo + (hi - lo) * i / 49.0;
        auto b = lcft::constants(g);
        double c1b = lcft::c1_assembled(g);
        rows.push_back(make_row("c1-dual", "gamma=" + fmt(g), b.c1, c1b,
                                std::abs(b.c1 - c1b) / std::abs(b.c1), tol(1e-10)));
        double e4b = lcft::e4_simplified(g);
        rows.push_back(make_row("e4-dual", "gamma=" + fmt(g), b.e4, e4b,
                                std::abs(b.e4 - e4b) / std::abs(b.e4), tol(1e-10)));
        rows.push_back(make_row("e4-negative", "gamma=" + fmt(g), b.e4, -1.0,
                                b.e4 < 0.0 ? 0.0 : 1.0, 0.5));
    }
    for (double g : {1.5, 1.7, 1.9}) {
        double q_big = 2.0 / g + g / 2.0;
        double mid = 0.5 * (g + q_big);
        double ratio = lcft::gbar(g, mid, lcft::BetaCase::Gamma) /
                       lcft::gbar(g, mid, lcft::BetaCase::Zero);
        rows.push_back(make_row("gbar-gamma-ratio", "gamma=" + fmt(g), ratio,
                                1.0 / std::numbers::pi,
                                std::abs(ratio - 1.0 / std::numbers::pi), tol(1e-13)));
        double at_q = lcft::gbar(g, q_big, lcft::BetaCase::Zero);
        rows.push_back(make_row("gbar-at-Q", "gamma=" + fmt(g), at_q, 1.0, std::abs(at_q - 1.0),
                                tol(1e-11)));
    }
    return rows;
}

// Exponent / moment cross-identities.
inline std::vector<Row> identities_suite(double tol_override = 0.0) {
    std::vector<Row> rows;
    auto tol = [&](double dflt) { return tol_override > 0.0 ? tol_override : dflt; };

    for (int i = 0; i <= 20; ++i) {
        double kappa = 4.05 + (7.95 - 4.05) * i / 20.0;
        rows.push_back(make_row("g-at-one", "kappa=" + fmt(kappa),
                                exponent::backbone_g(kappa, 1.0), 0.0,
                                std::abs(exponent::backbone_g(kappa, 1.0)), tol(1e-15)));
    }
    {
        auto sol = exponent::solve_xi(6.0);
        double rp = std::sqrt(12.0 * sol.xi + 1.0);
        rows.push_back(make_row("kappa6-rho-doubling", "", rp, 2.0 * sol.rho,
                                std::abs(rp - 2.0 * sol.rho), tol(1e-12)));
        double f = std::sqrt(3.0) / 4.0 * rp + std::sin(2.0 * std::numbers::pi * rp / 3.0);
        rows.push_back(make_row("kappa6-reduced-equation", "", f, 0.0, std::abs(f), tol(1e-12)));
    }
    {
        double k0 = exponent::solve_kappa0();
        double w = 8.0 * std::numbers::pi / k0;
        rows.push_back(make_row("kappa0-tangent", "kappa0=" + fmt(k0), std::tan(w), w,
                                std::abs(std::tan(w) - w), tol(1e-10)));
    }
    for (int i = 0; i < 12; ++i) {
        double kappa = 4.2 + (7.8 - 4.2) * i / 11.0;
        auto p = exponent::KappaParams::from_kappa(kappa);
        double direct = exponent::solve_xi(kappa).xi;
        double via_moment = moment::xi_from_moment(p).xi;
        rows.push_back(make_row("xi-two-routes", "kappa=" + fmt(kappa), direct, via_moment,
                                std::abs(direct - via_moment), tol(1e-10)));
        double f0 = moment::moment_f(p, 0.0);
        rows.push_back(make_row("moment-at-zero", "kappa=" + fmt(kappa), f0, 0.0, std::abs(f0),
                                tol(1e-11)));
        double fxi = moment::moment_f(p, -direct);
        rows.push_back(make_row("moment-at-minus-xi", "kappa=" + fmt(kappa), fxi, 1.0,
                                std::abs(fxi - 1.0), tol(1e-9)));
    }
    for (double g : {1.5, 1.7, 1.9}) {
        auto p = exponent::KappaParams::from_gamma(g);
        for (int i = 1; i <= 6; ++i) {
            double alpha = g + (p.q_big - g) * i / 7.0;
            double lambda = 2.0 * exponent::delta_alpha(alpha, p) - 2.0;
            double a = moment::moment_f_gamma(p, alpha);
            double b = moment::moment_f(p, lambda);
            rows.push_back(make_row("moment-two-parametrizations",
                                    "gamma=" + fmt(g) + " alpha=" + fmt(alpha), a, b,
                                    std::abs(a - b), tol(1e-12)));
        }
    }
    return rows;
}

// Exact integer identities.
inline std::vector<Row> numtheory_suite(double tol_override = 0.0) {
    std::vector<Row> rows;
    auto tol = [&](double dflt) { return tol_override > 0.0 ? tol_override : dflt; };

    int bad_product = 0;
    for (int n = 1; n <= 500; ++n) {
        numtheory::IntPolynomial prod({numtheory::Int(1)});
        for (int d = 1; d <= n; ++d) {
            if (n % d == 0) prod = prod * numtheory::cyclotomic(d);
        }
        auto xn = numtheory::IntPolynomial::monomial(n);
        xn.c[0] = -1;
        if (!(prod == xn)) ++bad_product;
    }
    rows.push_back(make_row("cyclotomic-product", "n<=500", bad_product, 0.0, bad_product, 0.5));

    double worst_root = 0.0;
    for (int n = 3; n <= 50; ++n) {
        auto psi = numtheory::min_poly_two_cos(n);
        for (int k = 1; k < n; ++k) {
            if (std::gcd(k, n) != 1) continue;
            double v = std::abs(psi.eval(2.0 * std::cos(2.0 * std::numbers::pi * k / n)));
            worst_root = std::max(worst_root, v);
        }
    }
    rows.push_back(make_row("two-cos-roots", "n<=50", worst_root, 0.0, worst_root, tol(1e-9)));

    int degree_mismatch = 0;
    for (int n = 1; n <= 200; ++n) {
        auto psi = numtheory::min_poly_two_cos(n);
        for (int k = 1; k <= n; ++k) {
            if (std::gcd(static_cast<std::int64_t>(k), static_cast<std::int64_t>(n)) != 1) continue;
            auto cls = numtheory::classify_two_cos(k, n);
            int want = cls.is_integer ? 1 : cls.degree;
            if (psi.degree() != want) ++degree_mismatch;
        }
    }
    rows.push_back(make_row("classification-degree", "n<=200", degree_mismatch, 0.0,
                            degree_mismatch, 0.5));

    auto sqrt2 = numtheory::small_poly_scan(std::sqrt(2.0), 2, 2);
    bool found_sqrt2 = sqrt2.has_value() && *sqrt2 == numtheory::IntPolynomial({-2, 0, 1});
    rows.push_back(make_row("scan-finds-sqrt2", "deg<=2 height<=2", found_sqrt2 ? 0.0 : 1.0, 0.0,
                            found_sqrt2 ? 0.0 : 1.0, 0.5));

    auto xi_scan = numtheory::small_poly_scan(exponent::solve_xi(6.0).xi, 4, 30);
    rows.push_back(make_row("scan-empty-for-xi6", "deg<=4 height<=30",
                            xi_scan.has_value() ? 1.0 : 0.0, 0.0, xi_scan.has_value() ? 1.0 : 0.0,
                            0.5));
    return rows;
}

inline std::vector<Row> suite_by_name(const std::string& name, double tol_override = 0.0) {
    if (name == "integrals") return integrals_suite(tol_override);
    if (name == "constants") return constants_suite(tol_override);
    if (name == "identities") return identities_suite(tol_override);
    if (name == "numtheory") return numtheory_suite(tol_override);
    throw DomainError("unknown verification suite: " + name);
}

} // namespace backbone::verify
