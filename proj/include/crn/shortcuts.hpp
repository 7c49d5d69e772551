#pragma once

// Small-world shortcut construction. Hubs (locally degree-maximal SUs holding
// at least one channel) propose logical long-range links to candidates found
// in an angular search region between the hub and a designated destination
// node. A candidate accepts at most one shortcut; rejected proposals fall back
// to the next-best candidate and finally to a forced pick. Two baselines are
// provided: uniformly random pairs (RS) and a half-plane/degree-only variant
// with a wider search (WIDE).

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "crn/topology.hpp"

namespace crn {

enum class ShortcutMethod { None, Nsc, Rs, Wide };

const char* method_name(ShortcutMethod m);

struct GeometryParams {
    double alpha_deg = 30.0;            // full apex angle of the search region
    std::optional<int> destination;     // defaults to the SU nearest the area center
};

struct MessageCounters {
    std::uint64_t hello = 0;
    std::uint64_t create = 0;
    std::uint64_t ack = 0;
    std::uint64_t nack = 0;
    std::uint64_t force = 0;

    std::uint64_t total() const { return hello + create + ack + nack + force; }
};

struct ShortcutPlan {
    ShortcutMethod method = ShortcutMethod::None;
    std::vector<std::pair<int, int>> shortcuts;  // (proposer, accepting target), creation order
    MessageCounters messages;
    int rounds = 0;                              // proposal rounds executed
};

// Pairwise link connectivity (probability that at least one shared channel can
// serve the pair). Symmetric, diagonal fixed at 1.
struct ConnectivityMatrix {
    int m = 0;
    std::vector<double> p;

    ConnectivityMatrix() = default;
    explicit ConnectivityMatrix(int m_) : m(m_), p(static_cast<std::size_t>(m_) * m_, 0.0) {
        for (int i = 0; i < m_; ++i) at(i, i) = 1.0;
    }
    double& at(int i, int j) { return p[static_cast<std::size_t>(i) * m + j]; }
    double at(int i, int j) const { return p[static_cast<std::size_t>(i) * m + j]; }
};

// SU nearest the area center (ties broken by lower id).
int default_destination(const Topology& t);

// Hub eligibility: degree >= every neighbor's degree and a nonempty local
// channel set. Result sorted by (degree desc, id asc), truncated to max_hubs.
std::vector<int> select_hubs(const Topology& t, int max_hubs);

// True when j lies inside the angular region between i and d: both the angle
// at i (between i->d and i->j) and the angle at d (between d->i and d->j) stay
// below alpha/2, and j's projection onto the segment i->d falls strictly
// between the endpoints. Degenerate placements (j coincides with i or d)
// are outside.
bool in_search_region(const Topology& t, int i, int d, int j, double alpha_deg);

// Best shortcut candidate for a hub: among SUs inside the search region that
// are neither the hub, its neighbors, nor zero-connectivity pairs, the one
// maximizing pairwise connectivity; ties broken by higher degree, then lower
// id. Empty when the region holds no viable candidate.
std::optional<int> select_shortcut_candidate(const Topology& t, int hub, const GeometryParams& g,
                                             const ConnectivityMatrix& conn);

ShortcutPlan build_plan_nsc(const Topology& t, const GeometryParams& g,
                            const ConnectivityMatrix& conn, int shortcut_budget,
                            std::uint64_t seed);

// Uniformly random non-adjacent pairs; each target accepts at most once.
ShortcutPlan build_plan_rs(const Topology& t, int shortcut_budget, std::uint64_t seed);

// Same handshake as NSC but the search region is the full half-plane toward
// the destination and candidates are ranked by degree alone; each created
// shortcut costs one extra search message.
ShortcutPlan build_plan_wide(const Topology& t, const GeometryParams& g, int shortcut_budget,
                             std::uint64_t seed);

// Plain-text serialization: one "s <u> <v> <method>" line per shortcut and a
// trailing "msgs hello=.. create=.. ack=.. nack=.. force=.." line.
std::string serialize_plan(const ShortcutPlan& plan);
ShortcutPlan parse_plan(const std::string& text);

}  // namespace crn
