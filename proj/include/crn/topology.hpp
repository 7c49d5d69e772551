#pragma once

// Random geometric network of secondary users (SU) sharing an area with
// primary users (PU). SU-SU links exist whenever two SUs are within mutual
// transmission range. The generator can rescale the deployment area so the
// realized mean SU degree hits a target, and can optionally resample until the
// SU graph is connected.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace crn {

enum class NodeKind { Su, Pu };

struct Node {
    int id = 0;
    double x = 0.0;
    double y = 0.0;
    NodeKind kind = NodeKind::Su;
    double tx_range = 0.0;
    int radios = 0;                  // SU only
    std::vector<int> channels;       // SU only: locally available channels, sorted
};

struct Topology {
    std::vector<Node> nodes;         // SUs first (ids 0..m_su-1), then PUs
    int m_su = 0;
    int n_pu = 0;
    int n_channels = 0;
    double area_w = 0.0;
    double area_h = 0.0;
    std::uint64_t seed = 0;
    std::vector<std::vector<int>> su_adj;          // per-SU sorted neighbor lists
    std::vector<std::pair<int, int>> su_edges;     // u < v, lexicographically sorted

    bool adjacent(int u, int v) const;
    int degree(int u) const { return static_cast<int>(su_adj[u].size()); }
};

struct TopologyParams {
    int m_su = 100;
    int n_pu = 12;
    double area_w = 1000.0;
    double area_h = 1000.0;
    double pu_range = 100.0;
    double su_range = 50.0;
    int radios = 4;
    int n_channels = 12;
    double channel_availability = 0.8;
    // Rescale the area (preserving relative positions) until the mean SU degree
    // is within degree_tolerance of degree_target. Disabled when unset.
    std::optional<double> degree_target = 4.0;
    double degree_tolerance = 0.1;
    // Resample placements (derived sub-seeds) until the SU graph is connected.
    bool require_connected = false;
};

Topology generate_topology(const TopologyParams& params, std::uint64_t seed);

struct PathLengthResult {
    std::optional<double> value;   // mean hops over ordered connected SU pairs
    std::size_t connected_pairs = 0;
    std::size_t total_pairs = 0;
};

// Per-node clustering: fraction of neighbor pairs that are themselves
// adjacent; 0 when the degree is below 2.
std::vector<double> node_clustering(const Topology& t);

// Graph clustering coefficient: mean of the per-node values over all SUs.
double clustering_coefficient(const Topology& t);

// Mean shortest-path hop count over ordered SU pairs, BFS on the SU graph plus
// the given extra (logical) edges. Disconnected pairs are excluded from the
// mean; a graph with no connected pair yields an empty value.
PathLengthResult average_path_length(const Topology& t,
                                     std::span<const std::pair<int, int>> extra_edges = {});

// L(extra) / L(none); empty when either side has no connected pair.
std::optional<double> path_length_ratio(const Topology& t,
                                        std::span<const std::pair<int, int>> extra_edges);

double mean_degree(const Topology& t);

bool su_graph_connected(const Topology& t);

// Plain-text serialization:
//   nodes <count> channels <N>
//   <id> <x> <y> <SU|PU> <radios> ch:<comma-separated channels>
//   e <u> <v>
// Coordinates round-trip bit-exactly. Area, ranges and seed are not stored.
std::string serialize_topology(const Topology& t);
Topology parse_topology(const std::string& text);

}  // namespace crn
