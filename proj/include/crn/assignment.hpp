#pragma once

// Radio-to-channel assignment. The channel-aware path ranks the channels a
// node shares with its neighbors by the slack between expected channel idle
// time and packet transmission time, drops channels whose slack is negative,
// and hands the best channels to the radios. Nodes that terminate shortcuts
// first reserve a radio per shortcut link, tuned to the tightest-slack channel
// both endpoints hold — a rule both ends compute identically, so the link
// comes up without negotiation. The baseline path assigns uniformly random
// shared channels.

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "crn/shortcuts.hpp"
#include "crn/sop.hpp"
#include "crn/topology.hpp"

namespace crn {

struct ChannelTiming {
    int channel = -1;
    double t_v = 0.0;    // expected time the channel stays usable (primary inter-arrival)
    double t_r = 0.0;    // time to push one packet through the channel
    double delta = 0.0;  // t_v - t_r
};

// t_v = 1 / lambda_p (infinite when the primary never arrives), t_r = bits / w.
ChannelTiming estimate_timing(const QueueParams& q, std::uint64_t packet_bits, double w,
                              int channel = -1);

struct NodeContext {
    int node_id = 0;
    std::vector<int> avai;                        // local channels, sorted
    std::vector<std::vector<int>> neighbor_avai;  // one channel set per physical neighbor
    int radios = 1;
    // Channel sets of this node's shortcut partners, in shortcut creation
    // order; nonempty marks the node as a shortcut endpoint (hub or target).
    std::vector<std::vector<int>> shortcut_partners;
};

struct NodeAssignment {
    std::vector<int> radio_channels;  // one channel per assigned radio, radio order
    int radios = 0;
    int reserved = 0;                 // leading radios pinned to shortcut links

    bool shortcut_radio() const { return reserved > 0; }
    int unassigned() const { return radios - static_cast<int>(radio_channels.size()); }
    bool operator==(const NodeAssignment&) const = default;
};

// Slack-ordered assignment (deterministic; ties broken by channel index).
NodeAssignment assign_channels(const NodeContext& ctx, std::span<const ChannelTiming> timings);

// Uniformly random distinct shared channels, up to the radio count.
NodeAssignment assign_random(const NodeContext& ctx, std::uint64_t seed);

enum class AssignMode { ChannelAware, Random };

const char* assign_mode_name(AssignMode m);

struct Assignment {
    std::vector<NodeAssignment> per_node;  // indexed by SU id

    // True iff u and v ended up with a common assigned channel (how any link,
    // physical or shortcut, becomes usable).
    bool link_usable(int u, int v) const;

    bool operator==(const Assignment&) const = default;
};

// Assign every SU in id order. Shortcut endpoints are read from the plan; in
// channel-aware mode both endpoints of each shortcut reserve a radio for it.
Assignment assign_all(const Topology& t, const ShortcutPlan& plan,
                      std::span<const ChannelTiming> timings, AssignMode mode,
                      std::uint64_t seed);

// Recompute the assignment of the affected nodes only, after their local
// channel sets changed (e.g. a primary user appeared); all other entries are
// copied bit-identically from the current assignment.
Assignment reassign_on_pu_arrival(const Topology& t, const ShortcutPlan& plan,
                                  std::span<const ChannelTiming> timings, AssignMode mode,
                                  std::uint64_t seed, const Assignment& current,
                                  std::span<const int> affected,
                                  const std::vector<std::pair<int, std::vector<int>>>& new_avai);

// Plain-text serialization: one "a <node> <radio>:<channel> ..." line per SU.
std::string serialize_assignment(const Assignment& a);
Assignment parse_assignment(const std::string& text);

}  // namespace crn
