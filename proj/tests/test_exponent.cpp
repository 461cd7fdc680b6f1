#include <catch2/catch_amalgamated.hpp>

#include <chrono>
#include <cmath>
#include <numbers>

#include "backbone/exponent.hpp"

using namespace backbone;
using namespace backbone::exponent;

TEST_CASE("kappa_from_q at the exact table rows") {
    CHECK(kappa_from_q(1.0) == Catch::Approx(6.0).epsilon(1e-14));
    CHECK(kappa_from_q(2.0) == Catch::Approx(16.0 / 3.0).epsilon(1e-14));
    CHECK(kappa_from_q(3.0) == Catch::Approx(24.0 / 5.0).epsilon(1e-13));
    CHECK(kappa_from_q(2.0 + std::sqrt(3.0)) == Catch::Approx(48.0 / 11.0).epsilon(1e-13));
    CHECK(kappa_from_q(4.0) == Catch::Approx(4.0).margin(1e-7));
}

TEST_CASE("kappa_from_q monotone decreasing, domain checked") {
    double prev = kappa_from_q(1e-6);
    for (double q = 0.1; q <= 4.0; q += 0.1) {
        double k = kappa_from_q(q);
        CHECK(k < prev);
        CHECK(k >= 4.0 - 1e-12);
        CHECK(k < 8.0);
        prev = k;
    }
    CHECK_THROWS_AS(kappa_from_q(0.0), DomainError);
    CHECK_THROWS_AS(kappa_from_q(4.1), DomainError);
}

TEST_CASE("solve_xi(6) reproduces the known digits in under 10ms") {
    auto start = std::chrono::steady_clock::now();
    auto sol = solve_xi(6.0);
    auto elapsed = std::chrono::duration<double, std::milli>(
        std::chrono::steady_clock::now() - start).count();
    CHECK(sol.xi == Catch::Approx(0.35666683671288).margin(1e-10));
    CHECK(std::abs(sol.residual) < 1e-12);
    CHECK_FALSE(sol.degenerate);
    CHECK(elapsed < 10.0);
    // rho in (kappa/4 - 1, kappa/4)
    CHECK(sol.rho > 6.0 / 4.0 - 1.0);
    CHECK(sol.rho < 6.0 / 4.0);
}

TEST_CASE("solve_xi table values") {
    CHECK(solve_xi(16.0 / 3.0).xi == Catch::Approx(0.2678678166).margin(1e-9));
    CHECK(solve_xi(24.0 / 5.0).xi == Catch::Approx(0.2059232891).margin(1e-9));
    CHECK(solve_xi(48.0 / 11.0).xi == Catch::Approx(0.1602191369).margin(1e-9));
}

TEST_CASE("exponent_table rows") {
    auto rows = exponent_table();
    REQUIRE(rows.size() == 5);
    CHECK(rows[0].xi == Catch::Approx(0.35666683671288).margin(1e-10));
    CHECK(rows[2].xi == Catch::Approx(0.2059232891).margin(1e-9));
    CHECK(rows[3].xi == Catch::Approx(0.1602191369).margin(1e-9));
    CHECK(rows[4].xi == Catch::Approx(0.125).margin(1e-5));
}

TEST_CASE("solve_kappa0 and the degenerate window") {
    double k0 = solve_kappa0();
    CHECK(k0 == Catch::Approx(5.593245).margin(1e-5));
    double w = 8.0 * std::numbers::pi / k0;
    CHECK(std::abs(std::tan(w) - w) < 1e-10);

    auto sol = solve_xi(k0);
    CHECK(sol.degenerate);
    CHECK(sol.xi == Catch::Approx(1.0 - k0 / 8.0).margin(1e-12));

    // sign of xi(kappa) - (1 - kappa/8) flips across kappa0
    auto below = solve_xi(k0 - 1e-3);
    auto above = solve_xi(k0 + 1e-3);
    CHECK_FALSE(below.degenerate);
    CHECK_FALSE(above.degenerate);
    double sb = below.xi - (1.0 - below.kappa / 8.0);
    double sa = above.xi - (1.0 - above.kappa / 8.0);
    CHECK(sb * sa < 0.0);
}

TEST_CASE("rho = 1 zeroes g identically") {
    for (int i = 1; i < 100; ++i) {
        double kappa = 4.0 + 4.0 * i / 100.0;
        CHECK(std::abs(backbone_g(kappa, 1.0)) < 1e-15);
    }
}

TEST_CASE("kappa = 6 specialization: root of the sqrt(12 xi + 1) form") {
    // f(r) = (sqrt(3)/4) r + sin(2 pi r/3) has its nontrivial root at
    // r = sqrt(12 xi + 1) = 2 rho, inside (2,3).
    auto sol = solve_xi(6.0);
    double r = std::sqrt(12.0 * sol.xi + 1.0);
    CHECK(r == Catch::Approx(2.0 * sol.rho).epsilon(1e-12));
    CHECK(r > 2.0);
    CHECK(r < 3.0);
    double f = std::sqrt(3.0) / 4.0 * r + std::sin(2.0 * std::numbers::pi * r / 3.0);
    CHECK(std::abs(f) < 1e-12);
}

TEST_CASE("xi stays inside (0, 1-2/kappa) and the scan sees at most two sign changes") {
    for (int i = 1; i <= 100; ++i) {
        double kappa = 4.0 + 3.98 * i / 101.0;
        auto sol = solve_xi(kappa);
        CHECK(sol.xi > 0.0);
        CHECK(sol.xi < 1.0 - 2.0 / kappa);

        double a = kappa / 4.0 - 1.0;
        double rho_max = std::sqrt(kappa / 2.0 - 1.0 + a * a);
        auto g = [kappa](double r) { return backbone_g(kappa, r); };
        auto brackets = rootfind::scan_sign_changes(g, a + 5e-5, rho_max, 1e-4);
        CHECK(brackets.size() <= 2);
    }
}

TEST_CASE("solve_xi near the kappa -> 4 limit") {
    CHECK(solve_xi(4.0 + 1e-8).xi == Catch::Approx(0.125).margin(1e-5));
}

TEST_CASE("solve_xi domain guards") {
    CHECK_THROWS_AS(solve_xi(4.0), DomainError);
    CHECK_THROWS_AS(solve_xi(8.0), DomainError);
    CHECK_THROWS_AS(solve_xi(8.0 - 1e-10), DomainError);
}

TEST_CASE("delta_alpha values") {
    auto p = KappaParams::from_kappa(6.0);
    CHECK(delta_alpha(0.0, p) == 0.0);
    CHECK(delta_alpha(p.q_big, p) == Catch::Approx(p.q_big * p.q_big / 4.0).epsilon(1e-14));
    // algebraic simplification: (gamma/2)(Q - gamma/2) = 1
    CHECK(delta_alpha(p.gamma, p) == Catch::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("KappaParams invariants") {
    for (double kappa : {4.01, 5.0, 6.0, 7.99}) {
        auto p = KappaParams::from_kappa(kappa);
        CHECK(std::abs(p.kappa * p.gamma * p.gamma - 16.0) < 1e-13);
        CHECK(p.gamma > std::sqrt(2.0));
        CHECK(p.gamma < 2.0);
        CHECK(p.q_big == Catch::Approx(2.0 / p.gamma + p.gamma / 2.0));
    }
    CHECK_THROWS_AS(KappaParams::from_kappa(4.0), DomainError);
    CHECK_THROWS_AS(KappaParams::from_gamma(2.0), DomainError);
}
