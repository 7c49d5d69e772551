#include "crn/shortcuts.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <unordered_set>

#include "crn/error.hpp"
#include "crn/rng.hpp"

namespace crn {

const char* method_name(ShortcutMethod m) {
    switch (m) {
        case ShortcutMethod::Nsc: return "nsc";
        case ShortcutMethod::Rs: return "rs";
        case ShortcutMethod::Wide: return "wide";
        default: return "none";
    }
}

int default_destination(const Topology& t) {
    const double cx = t.area_w / 2.0, cy = t.area_h / 2.0;
    int best = 0;
    double best_d2 = std::numeric_limits<double>::infinity();
    for (int i = 0; i < t.m_su; ++i) {
        const double dx = t.nodes[i].x - cx, dy = t.nodes[i].y - cy;
        const double d2 = dx * dx + dy * dy;
        if (d2 < best_d2) {
            best_d2 = d2;
            best = i;
        }
    }
    return best;
}

std::vector<int> select_hubs(const Topology& t, int max_hubs) {
    std::vector<int> hubs;
    for (int u = 0; u < t.m_su; ++u) {
        if (t.nodes[u].channels.empty()) continue;
        const int du = t.degree(u);
        bool local_max = true;
        for (int v : t.su_adj[u])
            if (t.degree(v) > du) {
                local_max = false;
                break;
            }
        if (local_max) hubs.push_back(u);
    }
    std::sort(hubs.begin(), hubs.end(), [&](int a, int b) {
        if (t.degree(a) != t.degree(b)) return t.degree(a) > t.degree(b);
        return a < b;
    });
    if (max_hubs >= 0 && static_cast<int>(hubs.size()) > max_hubs) hubs.resize(max_hubs);
    return hubs;
}

bool in_search_region(const Topology& t, int i, int d, int j, double alpha_deg) {
    if (!(alpha_deg > 0.0 && alpha_deg < 180.0))
        throw ParameterError("in_search_region: alpha must lie in (0, 180) degrees");
    if (i == d) throw ParameterError("in_search_region: hub and destination coincide");
    if (j == i || j == d) return false;
    const double ux = t.nodes[d].x - t.nodes[i].x;
    const double uy = t.nodes[d].y - t.nodes[i].y;
    const double len2 = ux * ux + uy * uy;
    if (len2 <= 0.0) return false;
    const double len = std::sqrt(len2);
    const double wx = t.nodes[j].x - t.nodes[i].x;
    const double wy = t.nodes[j].y - t.nodes[i].y;
    const double proj = (wx * ux + wy * uy) / len;       // along i->d
    if (!(proj > 0.0 && proj < len)) return false;       // must fall between i and d
    const double perp = std::abs(wx * uy - wy * ux) / len;
    const double limit = std::tan(alpha_deg / 2.0 * std::numbers::pi / 180.0);
    return perp / proj < limit && perp / (len - proj) < limit;
}

namespace {

// Candidates a hub may propose to, best first.
std::vector<int> rank_candidates(const Topology& t, int hub, int dest, double alpha_deg,
                                 const ConnectivityMatrix* conn, bool degree_only) {
    std::vector<int> out;
    if (hub == dest) return out;
    for (int j = 0; j < t.m_su; ++j) {
        if (j == hub || t.adjacent(hub, j)) continue;
        bool inside;
        if (degree_only) {
            if (j == dest) continue;
            const double ux = t.nodes[dest].x - t.nodes[hub].x;
            const double uy = t.nodes[dest].y - t.nodes[hub].y;
            const double wx = t.nodes[j].x - t.nodes[hub].x;
            const double wy = t.nodes[j].y - t.nodes[hub].y;
            inside = wx * ux + wy * uy > 0.0;  // half-plane toward the destination
        } else {
            inside = in_search_region(t, hub, dest, j, alpha_deg);
            if (inside && conn && conn->at(hub, j) <= 0.0) continue;  // no shared channel can serve the pair
        }
        if (inside) out.push_back(j);
    }
    std::sort(out.begin(), out.end(), [&](int a, int b) {
        if (!degree_only && conn) {
            const double pa = conn->at(hub, a), pb = conn->at(hub, b);
            if (pa != pb) return pa > pb;
        }
        if (t.degree(a) != t.degree(b)) return t.degree(a) > t.degree(b);
        return a < b;
    });
    return out;
}

// Forced fallback target: a random channel-holding node that has not accepted
// a shortcut yet, is not adjacent to the hub, and does not already share a
// shortcut with it. Two-hop neighbors are preferred to keep the pick close to
// the hub's vicinity.
std::optional<int> pick_force_target(const Topology& t, int hub, const std::vector<char>& blocked,
                                     std::mt19937_64& rng) {
    std::vector<char> adj(t.m_su, 0);
    adj[hub] = 1;
    for (int v : t.su_adj[hub]) adj[v] = 1;
    std::vector<int> two_hop, anywhere;
    std::vector<char> is_two_hop(t.m_su, 0);
    for (int v : t.su_adj[hub])
        for (int w : t.su_adj[v])
            if (!adj[w]) is_two_hop[w] = 1;
    for (int j = 0; j < t.m_su; ++j) {
        if (adj[j] || blocked[j] || t.nodes[j].channels.empty()) continue;
        (is_two_hop[j] ? two_hop : anywhere).push_back(j);
    }
    const std::vector<int>& pool = two_hop.empty() ? anywhere : two_hop;
    if (pool.empty()) return std::nullopt;
    return pool[rand_index(rng, pool.size())];
}

ShortcutPlan run_protocol(const Topology& t, const GeometryParams& g,
                          const ConnectivityMatrix* conn, int budget, std::uint64_t seed,
                          bool degree_only) {
    if (budget < 0) throw ParameterError("shortcut budget must be >= 0");
    ShortcutPlan plan;
    plan.method = degree_only ? ShortcutMethod::Wide : ShortcutMethod::Nsc;
    if (budget == 0 || t.m_su < 2) return plan;

    const int dest = g.destination.value_or(default_destination(t));
    if (dest < 0 || dest >= t.m_su)
        throw ParameterError("shortcut destination must be an SU id");
    const std::vector<int> hubs = select_hubs(t, std::numeric_limits<int>::max());
    std::mt19937_64 rng(mix_seed(seed, 0x5c));

    std::vector<std::vector<int>> cand(hubs.size());
    for (std::size_t h = 0; h < hubs.size(); ++h)
        cand[h] = rank_candidates(t, hubs[h], dest, g.alpha_deg, conn, degree_only);

    // Every hub announces itself/searches once.
    plan.messages.hello += hubs.size();

    std::vector<char> accepted(t.m_su, 0);
    std::vector<std::unordered_set<int>> refused(hubs.size());
    std::unordered_set<std::uint64_t> pairs;  // unordered shortcut pairs already created
    const auto pair_key = [&](int a, int b) {
        const auto lo = static_cast<std::uint64_t>(std::min(a, b));
        const auto hi = static_cast<std::uint64_t>(std::max(a, b));
        return lo * static_cast<std::uint64_t>(t.m_su) + hi;
    };
    int left = budget;
    bool progress = true;
    while (left > 0 && progress) {
        progress = false;
        ++plan.rounds;
        for (std::size_t h = 0; h < hubs.size() && left > 0; ++h) {
            const int hub = hubs[h];
            bool created = false;
            bool tried = false;
            for (int j : cand[h]) {
                if (refused[h].count(j) || pairs.count(pair_key(hub, j))) continue;
                tried = true;
                ++plan.messages.create;
                if (!accepted[j]) {
                    ++plan.messages.ack;
                    plan.shortcuts.emplace_back(hub, j);
                    accepted[j] = 1;
                    pairs.insert(pair_key(hub, j));
                    created = true;
                    break;
                }
                ++plan.messages.nack;
                refused[h].insert(j);
            }
            if (!created && tried) {
                // Every remaining candidate refused: force a shortcut.
                std::vector<char> blocked = accepted;
                for (int j = 0; j < t.m_su; ++j)
                    if (pairs.count(pair_key(hub, j))) blocked[j] = 1;
                if (auto forced = pick_force_target(t, hub, blocked, rng)) {
                    ++plan.messages.force;
                    plan.shortcuts.emplace_back(hub, *forced);
                    accepted[*forced] = 1;
                    pairs.insert(pair_key(hub, *forced));
                    created = true;
                }
            }
            if (created) {
                --left;
                progress = true;
                if (degree_only) ++plan.messages.hello;  // wider region: one extra search round
            }
        }
    }
    return plan;
}

}  // namespace

std::optional<int> select_shortcut_candidate(const Topology& t, int hub, const GeometryParams& g,
                                             const ConnectivityMatrix& conn) {
    const int dest = g.destination.value_or(default_destination(t));
    const auto ranked = rank_candidates(t, hub, dest, g.alpha_deg, &conn, false);
    if (ranked.empty()) return std::nullopt;
    return ranked.front();
}

ShortcutPlan build_plan_nsc(const Topology& t, const GeometryParams& g,
                            const ConnectivityMatrix& conn, int shortcut_budget,
                            std::uint64_t seed) {
    if (conn.m != t.m_su) throw ParameterError("connectivity matrix size mismatch");
    return run_protocol(t, g, &conn, shortcut_budget, seed, false);
}

ShortcutPlan build_plan_wide(const Topology& t, const GeometryParams& g, int shortcut_budget,
                             std::uint64_t seed) {
    return run_protocol(t, g, nullptr, shortcut_budget, seed, true);
}

ShortcutPlan build_plan_rs(const Topology& t, int shortcut_budget, std::uint64_t seed) {
    if (shortcut_budget < 0) throw ParameterError("shortcut budget must be >= 0");
    ShortcutPlan plan;
    plan.method = ShortcutMethod::Rs;
    if (t.m_su < 2) return plan;
    std::mt19937_64 rng(mix_seed(seed, 0x25));
    std::vector<char> accepted(t.m_su, 0);
    std::unordered_set<std::uint64_t> pairs;
    const auto pair_key = [&](int a, int b) {
        const auto lo = static_cast<std::uint64_t>(std::min(a, b));
        const auto hi = static_cast<std::uint64_t>(std::max(a, b));
        return lo * static_cast<std::uint64_t>(t.m_su) + hi;
    };
    std::uint64_t attempts = 200ULL * (static_cast<std::uint64_t>(shortcut_budget) + 1);
    while (static_cast<int>(plan.shortcuts.size()) < shortcut_budget && attempts-- > 0) {
        const int u = static_cast<int>(rand_index(rng, t.m_su));
        const int v = static_cast<int>(rand_index(rng, t.m_su));
        if (u == v || t.adjacent(u, v) || accepted[v] || pairs.count(pair_key(u, v))) continue;
        plan.shortcuts.emplace_back(u, v);
        accepted[v] = 1;
        pairs.insert(pair_key(u, v));
        ++plan.messages.create;
        ++plan.messages.ack;
    }
    return plan;
}

std::string serialize_plan(const ShortcutPlan& plan) {
    std::string out;
    for (const auto& [u, v] : plan.shortcuts)
        out += "s " + std::to_string(u) + ' ' + std::to_string(v) + ' ' +
               method_name(plan.method) + '\n';
    out += "msgs hello=" + std::to_string(plan.messages.hello) +
           " create=" + std::to_string(plan.messages.create) +
           " ack=" + std::to_string(plan.messages.ack) +
           " nack=" + std::to_string(plan.messages.nack) +
           " force=" + std::to_string(plan.messages.force) + '\n';
    return out;
}

ShortcutPlan parse_plan(const std::string& text) {
    ShortcutPlan plan;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "s") {
            int u, v;
            std::string method;
            if (!(ls >> u >> v >> method)) throw IoError("plan parse: bad shortcut line");
            plan.shortcuts.emplace_back(u, v);
            if (method == "nsc") plan.method = ShortcutMethod::Nsc;
            else if (method == "rs") plan.method = ShortcutMethod::Rs;
            else if (method == "wide") plan.method = ShortcutMethod::Wide;
            else throw IoError("plan parse: unknown method");
        } else if (tag == "msgs") {
            std::string kv;
            while (ls >> kv) {
                const auto eq = kv.find('=');
                if (eq == std::string::npos) throw IoError("plan parse: bad msgs line");
                const std::string key = kv.substr(0, eq);
                const std::uint64_t val = std::stoull(kv.substr(eq + 1));
                if (key == "hello") plan.messages.hello = val;
                else if (key == "create") plan.messages.create = val;
                else if (key == "ack") plan.messages.ack = val;
                else if (key == "nack") plan.messages.nack = val;
                else if (key == "force") plan.messages.force = val;
                else throw IoError("plan parse: unknown msgs key");
            }
        } else {
            throw IoError("plan parse: unknown line tag");
        }
    }
    return plan;
}

}  // namespace crn
