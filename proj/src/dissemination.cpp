#include "crn/dissemination.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "crn/error.hpp"
#include "crn/rng.hpp"

namespace crn {

namespace {

void validate_config(const Topology& t, const Assignment& a, const SimConfig& cfg) {
    if (cfg.source < 0 || cfg.source >= t.m_su) throw ParameterError("source must be an SU id");
    if (cfg.max_slots < 1) throw ParameterError("max_slots must be at least 1");
    if (!(cfg.slot_length > 0.0)) throw ParameterError("slot length must be positive");
    if (static_cast<int>(cfg.pu_busy_prob_per_channel.size()) < t.n_channels) {
        throw ParameterError("need one primary-busy probability per channel");
    }
    for (double p : cfg.pu_busy_prob_per_channel) {
        if (!std::isfinite(p) || p < 0.0 || p > 1.0) {
            throw ParameterError("primary-busy probabilities must lie in [0, 1]");
        }
    }
    if (static_cast<int>(a.per_node.size()) != t.m_su) {
        throw ParameterError("assignment does not match the topology");
    }
}

// Physical adjacency plus the plan's shortcut links, deduplicated and sorted
// so per-radio receiver choice is lowest-id-first.
std::vector<std::vector<int>> augmented_adjacency(const Topology& t, const ShortcutPlan& plan) {
    std::vector<std::vector<int>> adj = t.su_adj;
    for (const auto& [u, v] : plan.shortcuts) {
        if (u < 0 || u >= t.m_su || v < 0 || v >= t.m_su) {
            throw ParameterError("shortcut endpoint outside the topology");
        }
        adj[static_cast<std::size_t>(u)].push_back(v);
        adj[static_cast<std::size_t>(v)].push_back(u);
    }
    for (auto& row : adj) {
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
    }
    return adj;
}

bool has_channel(const NodeAssignment& na, int c) {
    return std::find(na.radio_channels.begin(), na.radio_channels.end(), c) !=
           na.radio_channels.end();
}

}  // namespace

SimResult run_dissemination(const Topology& t, const ShortcutPlan& plan, const Assignment& a,
                            const SimConfig& cfg) {
    validate_config(t, a, cfg);

    SimResult res;
    res.first_arrival.assign(static_cast<std::size_t>(t.m_su), -1);
    std::vector<char> informed(static_cast<std::size_t>(t.m_su), 0);
    informed[static_cast<std::size_t>(cfg.source)] = 1;
    res.first_arrival[static_cast<std::size_t>(cfg.source)] = 0;
    int informed_count = 1;

    if (t.m_su == 1) {
        res.latency_slots = 0;
        res.covered_fraction = 1.0;
        return res;
    }

    const auto adj = augmented_adjacency(t, plan);
    std::mt19937_64 rng(mix_seed(cfg.seed, 0xd15e));
    std::vector<char> busy(static_cast<std::size_t>(t.n_channels), 0);

    // A transmission u->v is ever possible on channel c when both ends
    // assigned c and the primary is not permanently on it.
    const auto edge_open = [&](int u, int v) {
        for (int c : a.per_node[static_cast<std::size_t>(u)].radio_channels) {
            if (cfg.pu_busy_prob_per_channel[static_cast<std::size_t>(c)] < 1.0 &&
                has_channel(a.per_node[static_cast<std::size_t>(v)], c)) {
                return true;
            }
        }
        return false;
    };
    const auto frontier_open = [&]() {
        for (int u = 0; u < t.m_su; ++u) {
            if (!informed[static_cast<std::size_t>(u)]) continue;
            for (int v : adj[static_cast<std::size_t>(u)]) {
                if (!informed[static_cast<std::size_t>(v)] && edge_open(u, v)) return true;
            }
        }
        return false;
    };

    for (int slot = 1; slot <= cfg.max_slots && informed_count < t.m_su; ++slot) {
        for (int c = 0; c < t.n_channels; ++c) {
            busy[static_cast<std::size_t>(c)] =
                rand_u01(rng) < cfg.pu_busy_prob_per_channel[static_cast<std::size_t>(c)];
        }

        std::vector<int> newly;
        for (int u = 0; u < t.m_su; ++u) {
            if (!informed[static_cast<std::size_t>(u)]) continue;
            std::vector<int> targeted;  // receivers this node already serves this slot
            for (int c : a.per_node[static_cast<std::size_t>(u)].radio_channels) {
                int receiver = -1;
                for (int v : adj[static_cast<std::size_t>(u)]) {
                    if (informed[static_cast<std::size_t>(v)]) continue;
                    if (std::find(targeted.begin(), targeted.end(), v) != targeted.end()) continue;
                    if (!has_channel(a.per_node[static_cast<std::size_t>(v)], c)) continue;
                    receiver = v;
                    break;
                }
                if (receiver < 0) continue;
                targeted.push_back(receiver);
                if (busy[static_cast<std::size_t>(c)]) continue;  // primary holds the channel this slot
                if (res.first_arrival[static_cast<std::size_t>(receiver)] < 0) {
                    res.first_arrival[static_cast<std::size_t>(receiver)] = slot;
                    newly.push_back(receiver);
                }
            }
        }

        for (int v : newly) informed[static_cast<std::size_t>(v)] = 1;
        informed_count += static_cast<int>(newly.size());

        if (informed_count == t.m_su) {
            res.latency_slots = slot;
            break;
        }
        if (newly.empty() && !frontier_open()) break;  // nobody left who could ever receive
    }

    res.covered_fraction = static_cast<double>(informed_count) / static_cast<double>(t.m_su);
    return res;
}

std::optional<double> latency_ratio(const SimResult& with_plan, const SimResult& without_plan) {
    if (!with_plan.latency_slots || !without_plan.latency_slots) return std::nullopt;
    const int num = *with_plan.latency_slots;
    const int den = *without_plan.latency_slots;
    if (num == den) return 1.0;
    if (den == 0) return std::nullopt;
    return static_cast<double>(num) / static_cast<double>(den);
}

std::string sim_csv_header() { return "scenario,seed,shortcuts,latency,covered_fraction"; }

std::string sim_csv_row(const std::string& scenario, std::uint64_t seed, int shortcuts,
                        const SimResult& r) {
    char tail[128];
    if (r.latency_slots) {
        std::snprintf(tail, sizeof(tail), "%d,%.10g", *r.latency_slots, r.covered_fraction);
    } else {
        std::snprintf(tail, sizeof(tail), "na,%.10g", r.covered_fraction);
    }
    return scenario + ',' + std::to_string(seed) + ',' + std::to_string(shortcuts) + ',' + tail;
}

}  // namespace crn
