#pragma once

// Exact integer machinery: Euler totients, cyclotomic polynomials, minimal
// polynomials of 2 cos(2 pi k/n), the rational-cosine classification, and a
// small exhaustive integer-polynomial scan.
//
// Coefficients are checked 128-bit integers; every add/mul throws on
// overflow, so results are exact or refused.  Cyclotomic coefficients stay
// tiny in the supported range (n <= 2000); the headroom costs nothing.

#include <array>
#include <cmath>
#include <cstdint>
#include <future>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "backbone/errors.hpp"

namespace backbone::numtheory {

using Int = __int128;

namespace detail {

inline Int checked_add(Int a, Int b) {
    Int r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("numtheory: 128-bit add overflow");
    return r;
}

inline Int checked_mul(Int a, Int b) {
    Int r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("numtheory: 128-bit mul overflow");
    return r;
}

} // namespace detail

inline std::string int_to_string(Int v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    std::string digits;
    while (v != 0) {
        int d = static_cast<int>(neg ? -(v % 10) : (v % 10));
        digits.push_back(static_cast<char>('0' + d));
        v /= 10;
    }
    if (neg) digits.push_back('-');
    return {digits.rbegin(), digits.rend()};
}

// Dense integer polynomial, coefficients ascending in degree.
struct IntPolynomial {
    std::vector<Int> c;  // c[i] multiplies x^i; trailing zeros trimmed

    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<Int> coeffs) : c(std::move(coeffs)) { trim(); }

    static IntPolynomial zero() { return IntPolynomial{}; }
    static IntPolynomial monomial(int deg, Int coeff = 1) {
        std::vector<Int> v(deg + 1, 0);
        v[deg] = coeff;
        return IntPolynomial(std::move(v));
    }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return c.empty() ? -1 : static_cast<int>(c.size()) - 1; }
    Int coeff(int i) const {
        return (i >= 0 && i < static_cast<int>(c.size())) ? c[i] : Int(0);
    }
    Int leading() const { return c.empty() ? Int(0) : c.back(); }

    bool operator==(const IntPolynomial& o) const { return c == o.c; }

    IntPolynomial operator+(const IntPolynomial& o) const {
        std::vector<Int> r(std::max(c.size(), o.c.size()), 0);
        for (size_t i = 0; i < r.size(); ++i) r[i] = detail::checked_add(coeff(int(i)), o.coeff(int(i)));
        return IntPolynomial(std::move(r));
    }
    IntPolynomial operator-(const IntPolynomial& o) const {
        std::vector<Int> r(std::max(c.size(), o.c.size()), 0);
        for (size_t i = 0; i < r.size(); ++i) r[i] = detail::checked_add(coeff(int(i)), -o.coeff(int(i)));
        return IntPolynomial(std::move(r));
    }
    IntPolynomial operator*(const IntPolynomial& o) const {
        if (is_zero() || o.is_zero()) return zero();
        std::vector<Int> r(c.size() + o.c.size() - 1, 0);
        for (size_t i = 0; i < c.size(); ++i) {
            if (c[i] == 0) continue;
            for (size_t j = 0; j < o.c.size(); ++j) {
                r[i + j] = detail::checked_add(r[i + j], detail::checked_mul(c[i], o.c[j]));
            }
        }
        return IntPolynomial(std::move(r));
    }

    // Exact division; throws if the divisor does not divide evenly over Z.
    IntPolynomial divide_exact(const IntPolynomial& d) const {
        if (d.is_zero()) throw DomainError("IntPolynomial: division by zero polynomial");
        IntPolynomial rem = *this;
        std::vector<Int> q(std::max<int>(degree() - d.degree() + 1, 0), 0);
        while (!rem.is_zero() && rem.degree() >= d.degree()) {
            Int lead = rem.leading();
            if (lead % d.leading() != 0) {
                throw DomainError("IntPolynomial: inexact division");
            }
            Int factor = lead / d.leading();
            int shift = rem.degree() - d.degree();
            q[shift] = factor;
            for (int i = 0; i <= d.degree(); ++i) {
                rem.c[i + shift] = detail::checked_add(rem.c[i + shift],
                                                       -detail::checked_mul(factor, d.c[i]));
            }
            rem.trim();
        }
        if (!rem.is_zero()) throw DomainError("IntPolynomial: inexact division (remainder)");
        return IntPolynomial(std::move(q));
    }

    // Horner in extended precision: monomial-basis evaluation near the
    // cluster of roots in (-2,2) cancels heavily, and double alone leaves
    // residuals above 1e-9 around degree 20.
    double eval(double x) const {
        long double r = 0.0L;
        for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + static_cast<long double>(*it);
        return static_cast<double>(r);
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::string out;
        for (int i = degree(); i >= 0; --i) {
            Int v = coeff(i);
            if (v == 0) continue;
            if (!out.empty()) out += (v > 0) ? " + " : " - ";
            else if (v < 0) out += "-";
            Int a = v < 0 ? -v : v;
            bool unit = (a == 1) && i > 0;
            if (!unit) out += int_to_string(a);
            if (i > 0) out += (i == 1) ? "x" : "x^" + std::to_string(i);
        }
        return out;
    }
};

// Euler totient by trial-division factorization.
inline std::int64_t totient(std::int64_t n) {
    if (n < 1) throw DomainError("totient: n must be positive");
    if (n > 1'000'000) throw CapacityError("totient: n exceeds 1e6");
    std::int64_t result = n;
    std::int64_t m = n;
    for (std::int64_t pf = 2; pf * pf <= m; ++pf) {
        if (m % pf == 0) {
            result -= result / pf;
            while (m % pf == 0) m /= pf;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

// Cyclotomic polynomial via exact division of x^n - 1 by the product of
// the lower-order cyclotomics over proper divisors.
inline IntPolynomial cyclotomic(int n) {
    if (n < 1) throw DomainError("cyclotomic: n must be positive");
    if (n > 2000) throw CapacityError("cyclotomic: n exceeds 2000");
    std::map<int, IntPolynomial> memo;
    auto compute = [&memo](auto&& self, int m) -> const IntPolynomial& {
        auto it = memo.find(m);
        if (it != memo.end()) return it->second;
        IntPolynomial xn = IntPolynomial::monomial(m);
        xn.c[0] = -1;  // x^m - 1
        IntPolynomial denom({Int(1)});
        for (int d = 1; d <= m / 2; ++d) {
            if (m % d == 0) denom = denom * self(self, d);
        }
        return memo.emplace(m, xn.divide_exact(denom)).first->second;
    };
    return compute(compute, n);
}

// Minimal polynomial of 2 cos(2 pi k/n) over the integers: degree
// phi(n)/2 for n >= 3 (x-2 and x+2 for n = 1, 2).  Built by rewriting the
// cyclotomic in the basis x^j + x^-j through the monic Chebyshev-type
// recurrence P_{j+1} = y P_j - P_{j-1}.
inline IntPolynomial min_poly_two_cos(int n) {
    if (n < 1) throw DomainError("min_poly_two_cos: n must be positive");
    if (n == 1) return IntPolynomial({Int(-2), Int(1)});  // x - 2
    if (n == 2) return IntPolynomial({Int(2), Int(1)});   // x + 2
    IntPolynomial phi = cyclotomic(n);
    int m = phi.degree() / 2;
    // cyclotomics are palindromic for n >= 3
    for (int i = 0; i <= phi.degree(); ++i) {
        if (phi.coeff(i) != phi.coeff(phi.degree() - i)) {
            throw DomainError("min_poly_two_cos: cyclotomic not palindromic");
        }
    }
    IntPolynomial p_prev({Int(2)});            // P_0 = 2
    IntPolynomial p_cur({Int(0), Int(1)});     // P_1 = y
    IntPolynomial y = p_cur;
    IntPolynomial result({phi.coeff(m)});
    for (int j = 1; j <= m; ++j) {
        if (phi.coeff(m + j) != 0) {
            result = result + IntPolynomial({phi.coeff(m + j)}) * p_cur;
        }
        if (j < m) {
            IntPolynomial p_next = y * p_cur - p_prev;
            p_prev = std::move(p_cur);
            p_cur = std::move(p_next);
        }
    }
    return result;
}

struct TwoCosClass {
    bool is_integer;
    int integer_value;  // in {-2,-1,0,1,2} when is_integer
    int degree;         // phi(n)/2 otherwise (1 when integer)
};

// 2 cos(2 pi k/n) with gcd(k,n) = 1 is rational iff n in {1,2,3,4,6}, and
// in those cases it is one of the integers 2,-2,-1,0,1.
inline TwoCosClass classify_two_cos(std::int64_t k, std::int64_t n) {
    if (n < 1) throw DomainError("classify_two_cos: n must be positive");
    std::int64_t kk = ((k % n) + n) % n;
    if (std::gcd(kk, n) != 1) {
        throw DomainError("classify_two_cos: k and n must be coprime");
    }
    switch (n) {
        case 1: return {true, 2, 1};
        case 2: return {true, -2, 1};
        case 3: return {true, -1, 1};
        case 4: return {true, 0, 1};
        case 6: return {true, 1, 1};
        default: return {false, 0, static_cast<int>(totient(n) / 2)};
    }
}

namespace detail {

// Scan all integer polynomials with degrees 1..max_degree (nonzero leading
// coefficient handled implicitly by stratum) whose non-constant coefficient
// tuple is enumerated directly; the constant term is solved by rounding,
// which is exhaustive because the acceptance threshold is far below 1/2.
inline std::optional<IntPolynomial> scan_stratum(double x, int max_degree, int max_height,
                                                 long lead_lo, long lead_hi, double threshold) {
    int h = max_height;
    std::vector<long> a(max_degree + 1, 0);
    std::vector<double> xp(max_degree + 1, 1.0);
    for (int i = 1; i <= max_degree; ++i) xp[i] = xp[i - 1] * x;

    // iterate over coefficients a[1..max_degree] with a[max_degree] in the
    // given stratum range
    for (long lead = lead_lo; lead <= lead_hi; ++lead) {
        a[max_degree] = lead;
        int pos = 1;
        for (int i = 1; i < max_degree; ++i) a[i] = -h;
        while (true) {
            double partial = 0.0;
            for (int i = 1; i <= max_degree; ++i) partial += a[i] * xp[i];
            long a0 = std::lround(-partial);
            if (std::abs(a0) <= h) {
                bool all_zero = (a0 == 0);
                for (int i = 1; all_zero && i <= max_degree; ++i) all_zero = (a[i] == 0);
                if (!all_zero && std::abs(partial + a0) < threshold) {
                    std::vector<Int> cs(max_degree + 1, 0);
                    cs[0] = a0;
                    for (int i = 1; i <= max_degree; ++i) cs[i] = a[i];
                    return IntPolynomial(std::move(cs));
                }
            }
            // odometer over a[1..max_degree-1]
            if (max_degree == 1) break;
            pos = 1;
            while (pos < max_degree && a[pos] == h) {
                a[pos] = -h;
                ++pos;
            }
            if (pos >= max_degree) break;
            ++a[pos];
        }
    }
    return std::nullopt;
}

} // namespace detail

// Exhaustive search for an integer polynomial p with deg <= max_degree and
// |coefficients| <= max_height such that |p(x)| < 1e-11 * height * max(1,|x|)^deg.
// Finding none is evidence (not proof) that x avoids low small polynomials.
inline std::optional<IntPolynomial> small_poly_scan(double x, int max_degree, int max_height) {
    if (max_degree < 1 || max_degree > 6) {
        throw DomainError("small_poly_scan: max_degree must lie in [1,6]");
    }
    if (max_height < 1 || max_height > 50) {
        throw DomainError("small_poly_scan: max_height must lie in [1,50]");
    }
    double threshold =
        1e-11 * max_height * std::pow(std::max(1.0, std::abs(x)), max_degree);

    for (int deg = 1; deg <= max_degree; ++deg) {
        // leading coefficient > 0 (p and -p are equivalent)
        double work = std::pow(2.0 * max_height + 1.0, deg);
        int strata = work > 4e6 ? 4 : 1;
        if (strata == 1) {
            auto r = detail::scan_stratum(x, deg, max_height, 1, max_height, threshold);
            if (r) return r;
        } else {
            std::vector<std::future<std::optional<IntPolynomial>>> futs;
            long per = (max_height + strata - 1) / strata;
            for (int w = 0; w < strata; ++w) {
                long lo = 1 + w * per;
                long hi = std::min<long>(max_height, lo + per - 1);
                if (lo > hi) continue;
                futs.push_back(std::async(std::launch::async, [=] {
                    return detail::scan_stratum(x, deg, max_height, lo, hi, threshold);
                }));
            }
            std::optional<IntPolynomial> found;
            for (auto& f : futs) {
                auto r = f.get();
                if (r && !found) found = r;
            }
            if (found) return found;
        }
    }
    return std::nullopt;
}

} // namespace backbone::numtheory
