#pragma once

// Monte Carlo driver for arm events, Wilson intervals, power-law fits, and
// the quasi-multiplicativity check.
//
// Trials are partitioned across workers by index; each trial's outcome is a
// pure function of (seed, event, radii, trial), so merged counts are
// identical for every worker count and schedule.  Success counts are the
// only shared output and are merged by summation.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include "backbone/arms.hpp"
#include "backbone/errors.hpp"
#include "backbone/lattice.hpp"

namespace backbone::mc {

enum class ArmEvent { OneArm, Backbone, AnnulusBB, BWW };

inline const char* event_name(ArmEvent e) {
    switch (e) {
        case ArmEvent::OneArm: return "onearm";
        case ArmEvent::Backbone: return "bb";
        case ArmEvent::AnnulusBB: return "bb-annulus";
        case ArmEvent::BWW: return "bww";
    }
    return "?";
}

struct RadiusSpec {
    std::int64_t r_in = 0;
    std::int64_t r_out = 0;
};

struct ArmTrialBatch {
    ArmEvent event = ArmEvent::Backbone;
    std::int64_t r_in = 0;
    std::int64_t r_out = 0;
    std::uint64_t samples = 0;
    std::uint64_t successes = 0;
    std::uint64_t seed = 0;
    std::pair<std::uint64_t, std::uint64_t> trial_range{0, 0};

    double p_hat() const {
        return samples == 0 ? 0.0 : static_cast<double>(successes) / static_cast<double>(samples);
    }
    double stderr_hat() const {
        double p = p_hat();
        return samples == 0 ? 0.0 : std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
    }
};

namespace detail {

// Region cache and per-radius query for one event kind.
struct EventSetup {
    std::shared_ptr<lattice::Region> region;
    arms::ArmQuery query;
    ArmEvent event;
    arms::ArmQuery white_query;  // BWW only
};

inline EventSetup make_setup(ArmEvent event, RadiusSpec r) {
    EventSetup s;
    s.event = event;
    switch (event) {
        case ArmEvent::OneArm: {
            s.region = std::make_shared<lattice::Region>(lattice::RegionSpec::ball(r.r_out));
            auto q = arms::backbone_query(*s.region);
            q.required_count = 1;
            s.query = std::move(q);
            break;
        }
        case ArmEvent::Backbone: {
            s.region = std::make_shared<lattice::Region>(lattice::RegionSpec::ball(r.r_out));
            s.query = arms::backbone_query(*s.region);
            break;
        }
        case ArmEvent::AnnulusBB: {
            s.region = std::make_shared<lattice::Region>(
                lattice::RegionSpec::annulus(r.r_in, r.r_out));
            s.query = arms::crossing_query(*s.region, arms::Color::Black, 2);
            break;
        }
        case ArmEvent::BWW: {
            s.region = std::make_shared<lattice::Region>(
                lattice::RegionSpec::annulus(r.r_in, r.r_out));
            s.query = arms::crossing_query(*s.region, arms::Color::Black, 1);
            s.white_query = arms::crossing_query(*s.region, arms::Color::White, 2);
            break;
        }
    }
    return s;
}

// distinct hash streams per (event, radius) so different batches never
// share site randomness
inline std::uint64_t stream_seed(std::uint64_t seed, ArmEvent event, RadiusSpec r) {
    std::uint64_t tag = (static_cast<std::uint64_t>(event) << 56) ^
                        (static_cast<std::uint64_t>(r.r_in) << 28) ^
                        static_cast<std::uint64_t>(r.r_out);
    return lattice::mix64(seed ^ lattice::mix64(tag));
}

template <class Col>
inline bool run_event(const EventSetup& s, const Col& col, arms::FlowScratch& scratch) {
    switch (s.event) {
        case ArmEvent::OneArm:
            return arms::has_one_arm(col, s.query, scratch);
        case ArmEvent::Backbone:
        case ArmEvent::AnnulusBB:
            return arms::max_disjoint_arms(col, s.query, scratch) >= s.query.required_count;
        case ArmEvent::BWW:
            return arms::has_one_arm(col, s.query, scratch) &&
                   arms::max_disjoint_arms(col, s.white_query, scratch) >= 2;
    }
    return false;
}

} // namespace detail

struct RunOptions {
    double p = 0.5;
    int workers = 8;
};

// Run `samples` independent trials per radius.  Counts are deterministic
// given (seed, event, radii): the trial outcome never depends on which
// worker executes it.
inline std::vector<ArmTrialBatch> run_trials(ArmEvent event, const std::vector<RadiusSpec>& radii,
                                             std::uint64_t samples, std::uint64_t seed,
                                             const RunOptions& opt = {}) {
    if (samples < 1) throw DomainError("run_trials: samples must be >= 1");
    for (std::size_t i = 1; i < radii.size(); ++i) {
        if (radii[i].r_out <= radii[i - 1].r_out) {
            throw DomainError("run_trials: radii must be increasing");
        }
    }
    int workers = std::max(1, opt.workers);

    std::vector<ArmTrialBatch> out;
    for (RadiusSpec r : radii) {
        detail::EventSetup setup = detail::make_setup(event, r);
        const std::uint64_t stream = detail::stream_seed(seed, event, r);

        std::vector<std::uint64_t> counts(workers, 0);
        auto work = [&](int w) {
            arms::FlowScratch scratch;
            scratch.ensure(setup.region->site_count());
            std::uint64_t local = 0;
            for (std::uint64_t t = w; t < samples; t += static_cast<std::uint64_t>(workers)) {
                lattice::HashColoring col(stream, t, opt.p);
                if (detail::run_event(setup, col, scratch)) ++local;
            }
            counts[w] = local;
        };
        if (workers == 1) {
            work(0);
        } else {
            std::vector<std::thread> pool;
            pool.reserve(workers);
            for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
            for (auto& th : pool) th.join();
        }

        ArmTrialBatch b;
        b.event = event;
        b.r_in = r.r_in;
        b.r_out = r.r_out;
        b.samples = samples;
        for (auto c : counts) b.successes += c;
        b.seed = seed;
        b.trial_range = {0, samples};
        out.push_back(b);
    }
    return out;
}

// Wilson score interval for a binomial proportion.
inline std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t samples,
                                                 double z = 1.96) {
    if (samples < 1 || successes > samples) {
        throw DomainError("wilson_interval: need 0 <= successes <= samples, samples >= 1");
    }
    double n = static_cast<double>(samples);
    double p = static_cast<double>(successes) / n;
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double center = (p + z2 / (2.0 * n)) / denom;
    double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

struct FitPoint {
    double n = 0.0;       // radius
    double p_hat = 0.0;   // success probability estimate
    double stderr_p = 0.0;
};

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
    int points_used = 0;
};

// Weighted least squares of log p on log n; weights from the delta method
// var(log p) = var(p)/p^2.  The slope estimates minus the decay exponent.
inline FitResult fit_power_law(const std::vector<FitPoint>& points) {
    if (points.size() < 3) throw DomainError("fit_power_law: need at least 3 points");
    double x0 = std::log(points.front().n);
    bool all_same = true;
    for (const auto& pt : points) {
        if (!(pt.p_hat > 0.0)) throw DomainError("fit_power_law: p_hat must be positive");
        if (std::log(pt.n) != x0) all_same = false;
    }
    if (all_same) throw DegenerateFitError("fit_power_law: all radii equal");

    double sw = 0, swx = 0, swy = 0;
    std::vector<double> w(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& pt = points[i];
        double var_log = pt.stderr_p > 0.0
                             ? (pt.stderr_p * pt.stderr_p) / (pt.p_hat * pt.p_hat)
                             : 1.0;
        w[i] = 1.0 / var_log;
        sw += w[i];
        swx += w[i] * std::log(pt.n);
        swy += w[i] * std::log(pt.p_hat);
    }
    double xbar = swx / sw, ybar = swy / sw;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        double dx = std::log(points[i].n) - xbar;
        sxx += w[i] * dx * dx;
        sxy += w[i] * dx * (std::log(points[i].p_hat) - ybar);
    }
    if (sxx == 0.0) throw DegenerateFitError("fit_power_law: no spread in radii");
    FitResult r;
    r.slope = sxy / sxx;
    r.intercept = ybar - r.slope * xbar;
    r.slope_stderr = std::sqrt(1.0 / sxx);
    r.points_used = static_cast<int>(points.size());
    return r;
}

inline FitResult fit_power_law(const std::vector<ArmTrialBatch>& batches) {
    std::vector<FitPoint> pts;
    for (const auto& b : batches) {
        pts.push_back({static_cast<double>(b.r_out), b.p_hat(), b.stderr_hat()});
    }
    return fit_power_law(pts);
}

struct QuasiMultReport {
    double p12 = 0, p23 = 0, p13 = 0;
    double c1_hat = 0;      // p13 / (p12 p23), must stay away from 0
    double slack = 0;       // 3-sigma multiplicative slack
    bool upper_ok = false;  // p13 <= p12 p23 (1 + slack)
};

// Quasi-multiplicativity: with disjoint annuli (half-open shells), crossing
// the union implies crossing both factors, and the factors are independent,
// so p13 <= p12 p23 holds exactly in expectation.  The empirical check
// allows propagated 3-sigma slack; c1_hat reports the lower ratio.
inline QuasiMultReport quasi_mult_check(const ArmTrialBatch& b12, const ArmTrialBatch& b23,
                                        const ArmTrialBatch& b13) {
    if (b12.r_out != b23.r_in || b13.r_in != b12.r_in || b13.r_out != b23.r_out) {
        throw DomainError("quasi_mult_check: radii must chain as (r1,r2),(r2,r3),(r1,r3)");
    }
    if (!(b12.r_in >= 1 && b23.r_in >= 2 * b12.r_in && b23.r_out >= 2 * b23.r_in)) {
        throw DomainError("quasi_mult_check: needs r2 >= 2 r1 and r3 >= 2 r2");
    }
    for (const auto* b : {&b12, &b23, &b13}) {
        if (b->successes == 0) {
            throw InsufficientDataError("quasi_mult_check: a batch has zero successes");
        }
    }
    QuasiMultReport r;
    r.p12 = b12.p_hat();
    r.p23 = b23.p_hat();
    r.p13 = b13.p_hat();
    double cv12 = b12.stderr_hat() / r.p12;
    double cv23 = b23.stderr_hat() / r.p23;
    double cv13 = b13.stderr_hat() / r.p13;
    r.slack = 3.0 * std::sqrt(cv12 * cv12 + cv23 * cv23 + cv13 * cv13);
    r.c1_hat = r.p13 / (r.p12 * r.p23);
    r.upper_ok = r.p13 <= r.p12 * r.p23 * (1.0 + r.slack);
    return r;
}

} // namespace backbone::mc
