#pragma once

// Arm-event detectors on lattice regions.
//
// max_disjoint_arms computes the maximum number of pairwise vertex-disjoint
// monochromatic paths from a source set to a target set by unit-capacity
// max flow on the node-split graph (an in/out copy per site, capacity one),
// so by Menger's theorem the count equals the minimum vertex cut.  The
// complement of the two-arm event is therefore exactly the existence of an
// opposite-color circuit with at most one defect separating the sets.
//
// Augmenting paths are found by BFS over the implicit residual graph and
// the search stops as soon as the required count is reached, which keeps
// the hot two-arm case at a couple of BFS passes over the visited cluster.
// Flow state lives in per-worker scratch buffers invalidated by epoch
// stamps, so a trial costs O(visited sites), not O(region).

#include <cstdint>
#include <string>
#include <vector>

#include "backbone/errors.hpp"
#include "backbone/lattice.hpp"

namespace backbone::arms {

using lattice::Region;

enum class Color { Black, White };

struct ArmQuery {
    const Region* region = nullptr;
    std::vector<std::int32_t> sources;
    std::vector<std::int32_t> targets;
    Color color = Color::Black;
    int required_count = 1;
    std::int32_t excluded_site = -1;  // origin in backbone queries
};

// Reusable per-worker flow buffers.
class FlowScratch {
  public:
    void ensure(std::int32_t n) {
        if (static_cast<std::int32_t>(node_used_.size()) >= n) return;
        visit_in_.assign(n, 0);
        visit_out_.assign(n, 0);
        parent_in_.assign(n, -1);
        parent_out_.assign(n, -1);
        flow_stamp_.assign(n, 0);
        target_stamp_.assign(n, 0);
        node_used_.assign(n, 0);
        src_used_.assign(n, 0);
        out_to_.assign(n, -1);
        in_from_.assign(n, -1);
        visit_epoch_ = 0;
        flow_epoch_ = 0;
    }

    std::uint32_t next_visit_epoch() {
        if (++visit_epoch_ == 0) {
            std::fill(visit_in_.begin(), visit_in_.end(), 0);
            std::fill(visit_out_.begin(), visit_out_.end(), 0);
            visit_epoch_ = 1;
        }
        return visit_epoch_;
    }

    std::uint32_t next_flow_epoch() {
        if (++flow_epoch_ == 0) {
            std::fill(flow_stamp_.begin(), flow_stamp_.end(), 0);
            std::fill(target_stamp_.begin(), target_stamp_.end(), 0);
            flow_epoch_ = 1;
        }
        return flow_epoch_;
    }

    // flow-state accessors, lazily reset per flow epoch
    bool fresh(std::int32_t i) const { return flow_stamp_[i] == flow_epoch_; }
    void touch(std::int32_t i) {
        if (!fresh(i)) {
            flow_stamp_[i] = flow_epoch_;
            node_used_[i] = 0;
            src_used_[i] = 0;
            out_to_[i] = -1;
            in_from_[i] = -1;
        }
    }
    bool node_used(std::int32_t i) const { return fresh(i) && node_used_[i]; }
    bool src_used(std::int32_t i) const { return fresh(i) && src_used_[i]; }
    std::int32_t out_to(std::int32_t i) const { return fresh(i) ? out_to_[i] : -1; }
    std::int32_t in_from(std::int32_t i) const { return fresh(i) ? in_from_[i] : -1; }
    bool is_target(std::int32_t i) const { return target_stamp_[i] == flow_epoch_; }

    std::vector<std::uint32_t> visit_in_, visit_out_;
    std::vector<std::int32_t> parent_in_, parent_out_;
    std::vector<std::uint32_t> flow_stamp_, target_stamp_;
    std::vector<std::uint8_t> node_used_, src_used_;
    std::vector<std::int32_t> out_to_, in_from_;
    std::vector<std::int32_t> queue_;
    std::uint32_t visit_epoch_ = 0;
    std::uint32_t flow_epoch_ = 0;
};

namespace detail {

template <class Col>
inline bool usable(const Col& coloring, const ArmQuery& q, std::int32_t i) {
    if (i < 0 || i == q.excluded_site) return false;
    bool black = coloring.black(i);
    return q.color == Color::Black ? black : !black;
}

} // namespace detail

// Monochromatic connectivity from the source set to the target set.
template <class Col>
bool has_one_arm(const Col& coloring, const ArmQuery& q, FlowScratch& s) {
    const Region& region = *q.region;
    s.ensure(region.site_count());
    const std::uint32_t stamp = s.next_visit_epoch();
    const std::uint32_t tstamp = s.next_flow_epoch();
    for (std::int32_t t : q.targets) s.target_stamp_[t] = tstamp;

    auto& queue = s.queue_;
    queue.clear();
    std::size_t head = 0;
    for (std::int32_t v : q.sources) {
        if (!detail::usable(coloring, q, v) || s.visit_in_[v] == stamp) continue;
        if (s.is_target(v)) return true;
        s.visit_in_[v] = stamp;
        queue.push_back(v);
    }
    while (head < queue.size()) {
        std::int32_t i = queue[head++];
        for (std::int32_t k : region.neighbor_indices(i)) {
            if (k < 0 || s.visit_in_[k] == stamp) continue;
            if (!detail::usable(coloring, q, k)) continue;
            if (s.is_target(k)) return true;
            s.visit_in_[k] = stamp;
            queue.push_back(k);
        }
    }
    return false;
}

inline bool has_one_arm(const lattice::Coloring& c, const ArmQuery& q) {
    FlowScratch s;
    return has_one_arm(c, q, s);
}

// Maximum number of pairwise vertex-disjoint monochromatic paths from
// sources to targets, early-stopped at q.required_count.
template <class Col>
int max_disjoint_arms(const Col& coloring, const ArmQuery& q, FlowScratch& s) {
    const Region& region = *q.region;
    s.ensure(region.site_count());
    const std::uint32_t fepoch = s.next_flow_epoch();
    for (std::int32_t t : q.targets) s.target_stamp_[t] = fepoch;

    auto& queue = s.queue_;
    int flow = 0;

    while (flow < q.required_count) {
        const std::uint32_t stamp = s.next_visit_epoch();
        queue.clear();
        std::size_t head = 0;
        std::int32_t goal = -1;

        for (std::int32_t v : q.sources) {
            if (!detail::usable(coloring, q, v)) continue;
            if (s.src_used(v) || s.visit_in_[v] == stamp) continue;
            s.visit_in_[v] = stamp;
            s.parent_in_[v] = -2;
            queue.push_back(2 * v);
        }

        while (head < queue.size()) {
            std::int32_t state = queue[head++];
            std::int32_t i = state >> 1;
            if (state & 1) {
                // out(i): arc to the super-sink, lattice arcs, reverse node arc
                if (s.is_target(i)) {
                    goal = state;
                    break;
                }
                for (std::int32_t k : region.neighbor_indices(i)) {
                    if (k < 0 || s.visit_in_[k] == stamp) continue;
                    if (!detail::usable(coloring, q, k)) continue;
                    if (s.out_to(i) == k) continue;  // arc already carries flow
                    s.visit_in_[k] = stamp;
                    s.parent_in_[k] = state;
                    queue.push_back(2 * k);
                }
                if (s.node_used(i) && s.visit_in_[i] != stamp) {
                    s.visit_in_[i] = stamp;
                    s.parent_in_[i] = state;
                    queue.push_back(2 * i);
                }
            } else {
                // in(i): node arc forward, reverse lattice arc
                if (!s.node_used(i) && s.visit_out_[i] != stamp) {
                    s.visit_out_[i] = stamp;
                    s.parent_out_[i] = state;
                    queue.push_back(2 * i + 1);
                }
                std::int32_t j = s.in_from(i);
                if (j >= 0 && s.visit_out_[j] != stamp) {
                    s.visit_out_[j] = stamp;
                    s.parent_out_[j] = state;
                    queue.push_back(2 * j + 1);
                }
            }
        }

        if (goal < 0) break;

        // augment along the parent chain, flipping residual arcs
        std::int32_t cur = goal;
        while (true) {
            std::int32_t ci = cur >> 1;
            std::int32_t par = (cur & 1) ? s.parent_out_[ci] : s.parent_in_[ci];
            if (par == -2) {
                s.touch(ci);
                s.src_used_[ci] = 1;
                break;
            }
            std::int32_t pi = par >> 1;
            s.touch(ci);
            s.touch(pi);
            if ((par & 1) == 0 && (cur & 1) == 1) {
                if (pi == ci) {
                    s.node_used_[ci] = 1;          // in(i) -> out(i)
                } else {
                    s.out_to_[ci] = -1;            // cancel flow out(ci) -> in(pi)
                    s.in_from_[pi] = -1;
                }
            } else if ((par & 1) == 1 && (cur & 1) == 0) {
                if (pi == ci) {
                    s.node_used_[ci] = 0;          // reverse node arc
                } else {
                    s.out_to_[pi] = ci;            // flow out(pi) -> in(ci)
                    s.in_from_[ci] = pi;
                }
            }
            cur = par;
        }
        ++flow;
    }
    return flow;
}

inline int max_disjoint_arms(const lattice::Coloring& c, const ArmQuery& q) {
    FlowScratch s;
    return max_disjoint_arms(c, q, s);
}

// --- packaged event queries ------------------------------------------------

// Arms of the two-arm event start at the six neighbors of the origin and
// end on the inner vertex boundary of the ball; the origin itself carries
// no color and no flow.
inline ArmQuery backbone_query(const Region& ball) {
    if (!ball.spec().is_ball || ball.spec().r_out < 1) {
        throw DomainError("backbone_query: needs Ball(n) with n >= 1");
    }
    ArmQuery q;
    q.region = &ball;
    for (auto off : lattice::kNeighborOffsets) {
        std::int32_t i = ball.index_of({off.x, off.y});
        if (i >= 0) q.sources.push_back(i);
    }
    q.targets = ball.outer_rim();
    q.color = Color::Black;
    q.required_count = 2;
    q.excluded_site = ball.index_of({0, 0});
    return q;
}

// Crossing arms of an annulus: from the sites adjacent to the inner ball
// to the inner vertex boundary of the outer ball.  Thin annuli where the
// two rims meet make "crossing" ill-defined, hence the r_out >= r_in + 2
// requirement.
inline ArmQuery crossing_query(const Region& annulus, Color color, int required_count) {
    if (annulus.spec().is_ball) {
        throw DomainError("crossing_query: needs an annulus region");
    }
    if (annulus.spec().r_out < annulus.spec().r_in + 2) {
        throw DomainError("crossing_query: requires r_out >= r_in + 2");
    }
    ArmQuery q;
    q.region = &annulus;
    q.sources = annulus.inner_rim();
    q.targets = annulus.outer_rim();
    q.color = color;
    q.required_count = required_count;
    return q;
}

template <class Col>
bool has_backbone_event(const Col& coloring, const Region& ball, FlowScratch& s) {
    ArmQuery q = backbone_query(ball);
    return max_disjoint_arms(coloring, q, s) >= 2;
}

template <class Col>
bool has_backbone_event(const Col& coloring, const ArmQuery& prebuilt, FlowScratch& s) {
    return max_disjoint_arms(coloring, prebuilt, s) >= 2;
}

// One black arm plus two vertex-disjoint white arms; the two white arms cut
// the annulus in two sectors, so any black arm realizes the cyclic pattern
// black-white-white.
template <class Col>
bool has_bww_event(const Col& coloring, const Region& annulus, FlowScratch& s) {
    ArmQuery black = crossing_query(annulus, Color::Black, 1);
    if (!has_one_arm(coloring, black, s)) return false;
    ArmQuery white = crossing_query(annulus, Color::White, 2);
    return max_disjoint_arms(coloring, white, s) >= 2;
}

// --- exact enumeration ------------------------------------------------------

struct ExactProbability {
    std::uint64_t favorable = 0;
    std::int32_t sites = 0;  // probability = favorable / 2^sites

    double value() const {
        return static_cast<double>(favorable) / static_cast<double>(1ULL << sites);
    }
};

// Exact probability of an event under the uniform p = 1/2 measure, by
// enumeration of all 2^k configurations.
template <class Event>
ExactProbability exact_event_probability(const Region& region, Event&& event) {
    ExactProbability out;
    out.sites = region.site_count();
    lattice::enumerate_colorings(region, [&](lattice::MaskColoring c) {
        if (event(c)) ++out.favorable;
    });
    return out;
}

} // namespace backbone::arms
