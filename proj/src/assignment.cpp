#include "crn/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "crn/error.hpp"
#include "crn/rng.hpp"

namespace crn {

namespace {

std::vector<int> sorted_unique(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

std::vector<int> intersect_sorted(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// Channels this node could actually use to talk to someone: the union over
// physical neighbors of the channels both ends hold.
std::vector<int> shared_channel_pool(const NodeContext& ctx) {
    const std::vector<int> avai = sorted_unique(ctx.avai);
    std::vector<int> pool;
    for (const auto& nb : ctx.neighbor_avai) {
        const std::vector<int> common = intersect_sorted(avai, sorted_unique(nb));
        pool.insert(pool.end(), common.begin(), common.end());
    }
    return sorted_unique(std::move(pool));
}

const ChannelTiming& timing_for(std::span<const ChannelTiming> timings, int channel) {
    for (const auto& t : timings) {
        if (t.channel == channel) return t;
    }
    throw ParameterError("no timing entry for channel " + std::to_string(channel));
}

// Channels ordered by ascending slack (least spare time first), ties by
// channel index; channels whose slack is negative cannot carry a packet
// before the primary returns and are dropped.
std::vector<int> rank_by_slack(const std::vector<int>& pool,
                               std::span<const ChannelTiming> timings) {
    std::vector<std::pair<double, int>> keyed;
    keyed.reserve(pool.size());
    for (int c : pool) {
        const double delta = timing_for(timings, c).delta;
        if (delta < 0.0) continue;
        keyed.emplace_back(delta, c);
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<int> out;
    out.reserve(keyed.size());
    for (const auto& [delta, c] : keyed) out.push_back(c);
    return out;
}

void validate_context(const NodeContext& ctx) {
    if (ctx.radios < 0) throw ParameterError("radio count must be non-negative");
    for (int c : ctx.avai) {
        if (c < 0) throw ParameterError("channel indices must be non-negative");
    }
}

}  // namespace

ChannelTiming estimate_timing(const QueueParams& q, std::uint64_t packet_bits, double w,
                              int channel) {
    validate(q);
    if (packet_bits == 0) throw ParameterError("packet size must be positive");
    if (!std::isfinite(w) || w <= 0.0) throw ParameterError("channel rate must be positive");
    ChannelTiming t;
    t.channel = channel;
    t.t_v = q.lambda_p > 0.0 ? 1.0 / q.lambda_p : std::numeric_limits<double>::infinity();
    t.t_r = static_cast<double>(packet_bits) / w;
    t.delta = t.t_v - t.t_r;
    return t;
}

NodeAssignment assign_channels(const NodeContext& ctx, std::span<const ChannelTiming> timings) {
    validate_context(ctx);
    NodeAssignment out;
    out.radios = ctx.radios;

    const std::vector<int> avai = sorted_unique(ctx.avai);
    std::vector<int> ranked = rank_by_slack(shared_channel_pool(ctx), timings);

    if (!ctx.shortcut_partners.empty()) {
        if (ctx.radios < 2) {
            throw ParameterError("shortcut endpoint " + std::to_string(ctx.node_id) +
                                 " needs at least two radios (shortcut + data)");
        }
        // One reserved channel per shortcut link: the tightest-slack channel
        // both endpoints hold. The partner evaluates the same symmetric rule,
        // so the two ends land on the same channel. A channel reserved twice
        // serves both links from one radio.
        std::vector<int> reserved;
        bool first = true;
        for (const auto& partner : ctx.shortcut_partners) {
            if (static_cast<int>(reserved.size()) >= ctx.radios - 1) break;
            const std::vector<int> shared =
                rank_by_slack(intersect_sorted(avai, sorted_unique(partner)), timings);
            int pick = -1;
            if (!shared.empty()) {
                pick = shared.front();
            } else if (first && !ranked.empty()) {
                // No usable common channel with the first partner: keep the
                // radio alive on the best local channel anyway.
                pick = ranked.front();
            }
            first = false;
            if (pick >= 0 && std::find(reserved.begin(), reserved.end(), pick) == reserved.end()) {
                reserved.push_back(pick);
            }
        }
        out.reserved = static_cast<int>(reserved.size());
        out.radio_channels = reserved;
        for (int c : reserved) {
            ranked.erase(std::remove(ranked.begin(), ranked.end(), c), ranked.end());
        }
    }

    for (int c : ranked) {
        if (static_cast<int>(out.radio_channels.size()) >= ctx.radios) break;
        out.radio_channels.push_back(c);
    }
    return out;
}

NodeAssignment assign_random(const NodeContext& ctx, std::uint64_t seed) {
    validate_context(ctx);
    NodeAssignment out;
    out.radios = ctx.radios;

    std::vector<int> pool = shared_channel_pool(ctx);
    std::mt19937_64 rng(mix_seed(seed, 0xa551));
    const std::size_t take = std::min<std::size_t>(pool.size(), static_cast<std::size_t>(ctx.radios));
    for (std::size_t i = 0; i < take; ++i) {
        const std::size_t j = i + rand_index(rng, pool.size() - i);
        std::swap(pool[i], pool[j]);
        out.radio_channels.push_back(pool[i]);
    }
    return out;
}

const char* assign_mode_name(AssignMode m) {
    switch (m) {
        case AssignMode::ChannelAware: return "channel-aware";
        case AssignMode::Random: return "random";
    }
    throw ParameterError("unknown assignment mode");
}

bool Assignment::link_usable(int u, int v) const {
    const auto& a = per_node[static_cast<std::size_t>(u)].radio_channels;
    const auto& b = per_node[static_cast<std::size_t>(v)].radio_channels;
    for (int c : a) {
        if (std::find(b.begin(), b.end(), c) != b.end()) return true;
    }
    return false;
}

namespace {

using PartnerLists = std::unordered_map<int, std::vector<int>>;

// Shortcut partners of every endpoint, in plan creation order.
PartnerLists partners_by_node(const ShortcutPlan& plan) {
    PartnerLists partners;
    for (const auto& [u, v] : plan.shortcuts) {
        partners[u].push_back(v);
        partners[v].push_back(u);
    }
    return partners;
}

NodeContext make_context(const Topology& t, int u,
                         const std::vector<std::vector<int>>& avai_by_node,
                         const PartnerLists& partners, AssignMode mode) {
    NodeContext ctx;
    ctx.node_id = u;
    ctx.avai = avai_by_node[static_cast<std::size_t>(u)];
    ctx.radios = t.nodes[static_cast<std::size_t>(u)].radios;
    for (int v : t.su_adj[static_cast<std::size_t>(u)]) {
        ctx.neighbor_avai.push_back(avai_by_node[static_cast<std::size_t>(v)]);
    }
    if (mode == AssignMode::ChannelAware) {
        if (auto it = partners.find(u); it != partners.end()) {
            for (int v : it->second) {
                ctx.shortcut_partners.push_back(avai_by_node[static_cast<std::size_t>(v)]);
            }
        }
    }
    return ctx;
}

NodeAssignment assign_one(const NodeContext& ctx, std::span<const ChannelTiming> timings,
                          AssignMode mode, std::uint64_t seed) {
    if (mode == AssignMode::ChannelAware) return assign_channels(ctx, timings);
    return assign_random(ctx, mix_seed(seed, static_cast<std::uint64_t>(ctx.node_id)));
}

std::vector<std::vector<int>> base_avai(const Topology& t) {
    std::vector<std::vector<int>> avai(static_cast<std::size_t>(t.m_su));
    for (int u = 0; u < t.m_su; ++u) {
        avai[static_cast<std::size_t>(u)] = t.nodes[static_cast<std::size_t>(u)].channels;
    }
    return avai;
}

}  // namespace

Assignment assign_all(const Topology& t, const ShortcutPlan& plan,
                      std::span<const ChannelTiming> timings, AssignMode mode,
                      std::uint64_t seed) {
    const auto avai = base_avai(t);
    const auto partners = partners_by_node(plan);

    Assignment out;
    out.per_node.reserve(static_cast<std::size_t>(t.m_su));
    for (int u = 0; u < t.m_su; ++u) {
        const NodeContext ctx = make_context(t, u, avai, partners, mode);
        out.per_node.push_back(assign_one(ctx, timings, mode, seed));
    }
    return out;
}

Assignment reassign_on_pu_arrival(const Topology& t, const ShortcutPlan& plan,
                                  std::span<const ChannelTiming> timings, AssignMode mode,
                                  std::uint64_t seed, const Assignment& current,
                                  std::span<const int> affected,
                                  const std::vector<std::pair<int, std::vector<int>>>& new_avai) {
    if (static_cast<int>(current.per_node.size()) != t.m_su) {
        throw ParameterError("current assignment does not match the topology");
    }
    auto avai = base_avai(t);
    for (const auto& [id, channels] : new_avai) {
        if (id < 0 || id >= t.m_su) throw ParameterError("channel update names an unknown node");
        avai[static_cast<std::size_t>(id)] = sorted_unique(channels);
    }
    const auto partners = partners_by_node(plan);

    Assignment out = current;
    for (int u : affected) {
        if (u < 0 || u >= t.m_su) throw ParameterError("affected node out of range");
        const NodeContext ctx = make_context(t, u, avai, partners, mode);
        out.per_node[static_cast<std::size_t>(u)] = assign_one(ctx, timings, mode, seed);
    }
    return out;
}

std::string serialize_assignment(const Assignment& a) {
    std::ostringstream os;
    for (std::size_t u = 0; u < a.per_node.size(); ++u) {
        const NodeAssignment& na = a.per_node[u];
        os << "a " << u << " radios=" << na.radios << " sc=" << na.reserved;
        for (std::size_t r = 0; r < na.radio_channels.size(); ++r) {
            os << ' ' << r << ':' << na.radio_channels[r];
        }
        os << '\n';
    }
    return os.str();
}

Assignment parse_assignment(const std::string& text) {
    Assignment out;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag != "a") throw IoError("unexpected assignment line: " + line);
        std::size_t node = 0;
        std::string radios_tok, sc_tok;
        if (!(ls >> node >> radios_tok >> sc_tok)) throw IoError("truncated assignment line: " + line);
        if (radios_tok.rfind("radios=", 0) != 0 || sc_tok.rfind("sc=", 0) != 0) {
            throw IoError("malformed assignment line: " + line);
        }
        if (node != out.per_node.size()) throw IoError("assignment lines out of order");
        NodeAssignment na;
        na.radios = std::stoi(radios_tok.substr(7));
        na.reserved = std::stoi(sc_tok.substr(3));
        std::string pair;
        std::size_t expect = 0;
        while (ls >> pair) {
            const std::size_t colon = pair.find(':');
            if (colon == std::string::npos) throw IoError("malformed radio entry: " + pair);
            const std::size_t radio = std::stoul(pair.substr(0, colon));
            if (radio != expect) throw IoError("radio entries out of order: " + line);
            na.radio_channels.push_back(std::stoi(pair.substr(colon + 1)));
            ++expect;
        }
        out.per_node.push_back(std::move(na));
    }
    return out;
}

}  // namespace crn
