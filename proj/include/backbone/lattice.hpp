#pragma once

// Triangular-lattice geometry and site percolation configurations.
//
// Vertices are v = x + y e^(i pi/3) with integer (x, y); the squared
// Euclidean norm is x^2 + xy + y^2, so all geometry is integer-exact
// (membership in a ball of radius r is (2x+y)^2 + 3y^2 <= 4r^2).
//
// Randomness is counter-based: the color of a site is a pure function of
// (seed, trial, site index) through a SplitMix64-style avalanche chain, so
// colorings replay bit-identically on any platform and under any worker
// partition, and detectors can color sites lazily during search instead of
// materializing whole configurations.

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "backbone/errors.hpp"

namespace backbone::lattice {

struct AxialCoord {
    std::int32_t x = 0;
    std::int32_t y = 0;
    bool operator==(const AxialCoord&) const = default;
};

inline std::int64_t norm_sq(AxialCoord v) {
    std::int64_t x = v.x, y = v.y;
    return x * x + x * y + y * y;
}

// The six unit-distance offsets.
inline constexpr std::array<AxialCoord, 6> kNeighborOffsets = {{
    {1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, -1}, {-1, 1},
}};

inline std::array<AxialCoord, 6> neighbors(AxialCoord v) {
    std::array<AxialCoord, 6> out;
    for (int i = 0; i < 6; ++i) {
        out[i] = {v.x + kNeighborOffsets[i].x, v.y + kNeighborOffsets[i].y};
    }
    return out;
}

// --- counter-based randomness -------------------------------------------

// SplitMix64 avalanche finalizer.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Per-trial stream key; site colors are mix64(key + i * golden-ratio),
// i.e. an independently seeded SplitMix64 sequence indexed by site.
inline std::uint64_t trial_key(std::uint64_t seed, std::uint64_t trial) {
    return mix64(mix64(seed ^ 0x8BADF00D5EEDF00DULL) ^ trial);
}

inline std::uint64_t site_bits(std::uint64_t key, std::uint32_t site_index) {
    return mix64(key + site_index * 0x9E3779B97F4A7C15ULL);
}

// p as a 53-bit threshold; comparing the top 53 bits of the site hash is
// exact for p = 0, 1 and every representable double in between.
inline std::uint64_t probability_threshold(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("probability must lie in [0,1]");
    return static_cast<std::uint64_t>(p * 9007199254740992.0);  // p * 2^53
}

inline bool site_black(std::uint64_t key, std::uint32_t site_index, std::uint64_t threshold53) {
    return (site_bits(key, site_index) >> 11) < threshold53;
}

// --- regions --------------------------------------------------------------

struct RegionSpec {
    std::int64_t r_in = 0;   // 0 for balls
    std::int64_t r_out = 0;  // ball radius, or annulus outer radius
    bool is_ball = true;

    static RegionSpec ball(std::int64_t r) { return {0, r, true}; }
    static RegionSpec annulus(std::int64_t r_in, std::int64_t r_out) {
        return {r_in, r_out, false};
    }
};

inline constexpr std::int64_t kMaxRadius = 4096;

// An indexed finite set of lattice sites with precomputed neighbor indices
// and the boundary/rim site lists used by arm queries.  Immutable after
// construction; the site indexing (row-major in y then x) is part of the
// reproducibility contract.
class Region {
  public:
    explicit Region(RegionSpec spec) : spec_(spec) {
        if (spec.r_out < 0 || spec.r_out > kMaxRadius || spec.r_in < 0 ||
            (!spec.is_ball && spec.r_in >= spec.r_out) || (spec.is_ball && spec.r_in != 0)) {
            throw CapacityError("Region: radii must satisfy 0 <= r_in < r_out <= 4096");
        }
        const std::int64_t r2_out = spec.r_out * spec.r_out;
        const std::int64_t r2_in = spec.is_ball ? -1 : spec.r_in * spec.r_in;

        auto inside = [&](AxialCoord v) {
            std::int64_t n = norm_sq(v);
            return n <= r2_out && n > r2_in;
        };

        // integer bound: (2x+y)^2 + 3y^2 <= 4 r^2 gives |y| <= 2r/sqrt(3)
        const std::int32_t ymax = static_cast<std::int32_t>((2 * spec.r_out) / 1.7320508) + 2;
        for (std::int32_t y = -ymax; y <= ymax; ++y) {
            std::int64_t rem = 4 * r2_out - 3 * static_cast<std::int64_t>(y) * y;
            if (rem < 0) continue;
            std::int64_t t = static_cast<std::int64_t>(std::sqrt(static_cast<double>(rem)));
            while (t * t > rem) --t;
            while ((t + 1) * (t + 1) <= rem) ++t;  // exact isqrt
            // (2x + y)^2 <= rem
            std::int32_t xlo = static_cast<std::int32_t>(std::floor((-y - static_cast<double>(t)) / 2.0)) - 1;
            std::int32_t xhi = static_cast<std::int32_t>(std::ceil((-y + static_cast<double>(t)) / 2.0)) + 1;
            for (std::int32_t x = xlo; x <= xhi; ++x) {
                AxialCoord v{x, y};
                if (inside(v)) {
                    index_.emplace(pack(v), static_cast<std::int32_t>(sites_.size()));
                    sites_.push_back(v);
                }
            }
        }

        nbr_.resize(sites_.size());
        for (std::size_t i = 0; i < sites_.size(); ++i) {
            auto ns = neighbors(sites_[i]);
            bool on_inner_rim = false, on_outer_rim = false, on_boundary = false;
            for (int k = 0; k < 6; ++k) {
                auto it = index_.find(pack(ns[k]));
                nbr_[i][k] = (it == index_.end()) ? -1 : it->second;
                std::int64_t nn = norm_sq(ns[k]);
                if (nn > r2_out) on_outer_rim = true;
                if (!spec.is_ball && nn <= r2_in) on_inner_rim = true;
                if (it == index_.end()) on_boundary = true;
            }
            if (on_outer_rim) outer_rim_.push_back(static_cast<std::int32_t>(i));
            if (on_inner_rim) inner_rim_.push_back(static_cast<std::int32_t>(i));
            if (on_boundary) inner_boundary_.push_back(static_cast<std::int32_t>(i));
        }
        for (std::size_t i = 0; i < sites_.size(); ++i) {
            for (auto n : neighbors(sites_[i])) {
                if (index_.find(pack(n)) == index_.end()) outer_boundary_map_.emplace(pack(n), n);
            }
        }
    }

    const RegionSpec& spec() const { return spec_; }
    std::int32_t site_count() const { return static_cast<std::int32_t>(sites_.size()); }
    AxialCoord site(std::int32_t i) const { return sites_[i]; }
    const std::array<std::int32_t, 6>& neighbor_indices(std::int32_t i) const { return nbr_[i]; }

    std::int32_t index_of(AxialCoord v) const {
        auto it = index_.find(pack(v));
        return it == index_.end() ? -1 : it->second;
    }

    // sites of the region adjacent to the outside of the outer ball
    const std::vector<std::int32_t>& outer_rim() const { return outer_rim_; }
    // annulus sites adjacent to the inner ball (arm sources)
    const std::vector<std::int32_t>& inner_rim() const { return inner_rim_; }
    // literal inner vertex boundary of the site set
    const std::vector<std::int32_t>& inner_boundary() const { return inner_boundary_; }
    // literal outer vertex boundary (not sites of the region)
    std::vector<AxialCoord> outer_boundary() const {
        std::vector<AxialCoord> out;
        out.reserve(outer_boundary_map_.size());
        for (const auto& [_, v] : outer_boundary_map_) out.push_back(v);
        return out;
    }

  private:
    static std::uint64_t pack(AxialCoord v) {
        return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(v.x)) << 32) |
               static_cast<std::uint64_t>(static_cast<std::uint32_t>(v.y));
    }

    RegionSpec spec_;
    std::vector<AxialCoord> sites_;
    std::unordered_map<std::uint64_t, std::int32_t> index_;
    std::vector<std::array<std::int32_t, 6>> nbr_;
    std::vector<std::int32_t> outer_rim_, inner_rim_, inner_boundary_;
    std::unordered_map<std::uint64_t, AxialCoord> outer_boundary_map_;
};

inline Region build_region(RegionSpec spec) { return Region(spec); }

// --- colorings -------------------------------------------------------------

// Materialized configuration with provenance.
struct Coloring {
    std::vector<std::uint64_t> bits;
    std::int32_t count = 0;
    std::uint64_t seed = 0;
    std::uint64_t trial = 0;

    bool black(std::int32_t i) const { return (bits[i >> 6] >> (i & 63)) & 1; }
    void set_black(std::int32_t i, bool v) {
        if (v) bits[i >> 6] |= (1ULL << (i & 63));
        else bits[i >> 6] &= ~(1ULL << (i & 63));
    }
};

inline Coloring sample_coloring(const Region& region, double p, std::uint64_t seed,
                                std::uint64_t trial) {
    Coloring c;
    c.count = region.site_count();
    c.bits.assign((c.count + 63) / 64, 0);
    c.seed = seed;
    c.trial = trial;
    const std::uint64_t key = trial_key(seed, trial);
    const std::uint64_t thr = probability_threshold(p);
    for (std::int32_t i = 0; i < c.count; ++i) {
        if (site_black(key, static_cast<std::uint32_t>(i), thr)) c.set_black(i, true);
    }
    return c;
}

// Lazy view with the identical bit stream; detectors use this in the hot
// path so only visited sites are hashed.
struct HashColoring {
    std::uint64_t key;
    std::uint64_t threshold;

    HashColoring(std::uint64_t seed, std::uint64_t trial, double p)
        : key(trial_key(seed, trial)), threshold(probability_threshold(p)) {}
    bool black(std::int32_t i) const {
        return site_black(key, static_cast<std::uint32_t>(i), threshold);
    }
};

// Mask-backed coloring for exhaustive enumeration (k <= 25 sites).
struct MaskColoring {
    std::uint32_t mask = 0;
    bool black(std::int32_t i) const { return (mask >> i) & 1; }
};

inline constexpr std::int32_t kMaxEnumSites = 25;

// Calls f(MaskColoring) for each of the 2^k configurations.
template <class F>
void enumerate_colorings(const Region& region, F&& f) {
    const std::int32_t k = region.site_count();
    if (k > kMaxEnumSites) {
        throw CapacityError("enumerate_colorings: region has " + std::to_string(k) +
                            " sites, limit is " + std::to_string(kMaxEnumSites));
    }
    const std::uint64_t total = 1ULL << k;
    for (std::uint64_t m = 0; m < total; ++m) {
        f(MaskColoring{static_cast<std::uint32_t>(m)});
    }
}

} // namespace backbone::lattice
