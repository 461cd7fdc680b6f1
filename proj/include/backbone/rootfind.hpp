#pragma once

// Bracketed root isolation: uniform scan for sign changes followed by
// bisection.  Robustness over speed; every solver in the toolkit funnels
// through this engine so it is audited once.

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "backbone/errors.hpp"

namespace backbone::rootfind {

struct Bracket {
    double lo, hi;
};

// Scan f on [lo, hi] with the given step and collect sign-change brackets.
// Exact zeros at grid points are bracketed by their neighboring cells.
template <class F>
std::vector<Bracket> scan_sign_changes(F&& f, double lo, double hi, double step) {
    std::vector<Bracket> out;
    double prev_x = lo;
    double prev_v = f(lo);
    for (double x = lo + step; x < hi + step * 0.5; x += step) {
        if (x > hi) x = hi;
        double v = f(x);
        if ((prev_v < 0.0 && v > 0.0) || (prev_v > 0.0 && v < 0.0) ||
            (prev_v == 0.0 && v != 0.0) || (prev_v != 0.0 && v == 0.0)) {
            out.push_back({prev_x, x});
        }
        prev_x = x;
        prev_v = v;
        if (x >= hi) break;
    }
    return out;
}

// Bisect a sign-change bracket down to width xtol (absolute).
template <class F>
double bisect(F&& f, double lo, double hi, double xtol = 1e-14) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo < 0.0) == (fhi < 0.0)) {
        throw RootNotFoundError("bisect: endpoints do not bracket a sign change");
    }
    for (int i = 0; i < 200 && hi - lo > xtol; ++i) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace backbone::rootfind
