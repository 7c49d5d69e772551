#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "crn/error.hpp"
#include "crn/topology.hpp"
#include "doctest.h"
#include "oracles.hpp"

namespace {

// Triangle 0-1-2 with a pendant node 3 hanging off node 2.
crn::Topology pendant_triangle() {
    return oracle::build_fixture({{0, 0}, {1, 0}, {0.5, 1}, {0.5, 2}},
                                 {{0, 1}, {1, 2}, {0, 2}, {2, 3}},
                                 {{0}, {0, 1}, {1}, {0}}, 2, 2);
}

crn::TopologyParams small_params(int m_su, double availability = 0.6) {
    crn::TopologyParams p;
    p.m_su = m_su;
    p.n_pu = 3;
    p.area_w = 300.0;
    p.area_h = 300.0;
    p.su_range = 50.0;
    p.pu_range = 80.0;
    p.radios = 2;
    p.n_channels = 6;
    p.channel_availability = availability;
    p.degree_target = 3.0;
    p.degree_tolerance = 0.2;
    return p;
}

}  // namespace

TEST_CASE("clustering of the pendant-triangle fixture") {
    const auto t = pendant_triangle();
    const auto per_node = crn::node_clustering(t);
    REQUIRE(per_node.size() == 4);
    CHECK(per_node[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(per_node[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(per_node[2] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(per_node[3] == 0.0);
    CHECK(crn::clustering_coefficient(t) == doctest::Approx(7.0 / 12.0).epsilon(1e-12));
}

TEST_CASE("path length of the pendant-triangle fixture, with and without an extra edge") {
    const auto t = pendant_triangle();
    const auto base = crn::average_path_length(t);
    REQUIRE(base.value.has_value());
    CHECK(*base.value == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
    CHECK(base.connected_pairs == 12);
    CHECK(base.total_pairs == 12);

    const std::vector<std::pair<int, int>> extra = {{0, 3}};
    const auto with = crn::average_path_length(t, extra);
    REQUIRE(with.value.has_value());
    CHECK(*with.value == doctest::Approx(7.0 / 6.0).epsilon(1e-12));

    const auto ratio = crn::path_length_ratio(t, extra);
    REQUIRE(ratio.has_value());
    CHECK(*ratio == doctest::Approx(7.0 / 8.0).epsilon(1e-12));

    // An extra edge duplicating a physical link changes nothing.
    const std::vector<std::pair<int, int>> dup = {{0, 1}};
    const auto same = crn::average_path_length(t, dup);
    CHECK(*same.value == doctest::Approx(4.0 / 3.0).epsilon(1e-12));

    CHECK(crn::mean_degree(t) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(crn::su_graph_connected(t));
}

TEST_CASE("disconnected graphs average over reachable pairs only") {
    auto t = oracle::build_fixture({{0, 0}, {1, 0}, {0.5, 1}, {5, 5}},
                                   {{0, 1}, {1, 2}, {0, 2}},
                                   {{0}, {0}, {0}, {0}}, 1, 1);
    CHECK_FALSE(crn::su_graph_connected(t));
    const auto r = crn::average_path_length(t);
    REQUIRE(r.value.has_value());
    CHECK(*r.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.connected_pairs == 6);
    CHECK(r.total_pairs == 12);

    const auto lonely = oracle::build_fixture({{0, 0}}, {}, {{0}}, 1, 1);
    const auto empty = crn::average_path_length(lonely);
    CHECK_FALSE(empty.value.has_value());
    CHECK(empty.total_pairs == 0);
    CHECK(crn::su_graph_connected(lonely));
}

TEST_CASE("clustering and path length agree with brute-force references") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        CAPTURE(seed);
        auto p = small_params(8 + static_cast<int>(seed % 33));
        p.degree_target = 2.0 + static_cast<double>(seed % 4);
        const auto t = crn::generate_topology(p, seed);

        CHECK(crn::clustering_coefficient(t) ==
              doctest::Approx(oracle::brute_graph_clustering(t)).epsilon(1e-12));

        const auto lib = crn::average_path_length(t);
        const auto ref = oracle::floyd_warshall_apl(t);
        CHECK(static_cast<long long>(lib.connected_pairs) == ref.connected_pairs);
        REQUIRE(lib.value.has_value() == ref.average.has_value());
        if (lib.value)
            CHECK(*lib.value == doctest::Approx(*ref.average).epsilon(1e-12));
    }
}

TEST_CASE("generated topologies are internally consistent") {
    const auto t = crn::generate_topology(small_params(30), 5);
    REQUIRE(t.m_su == 30);
    REQUIRE(t.n_pu == 3);
    REQUIRE(t.nodes.size() == 33);
    for (int i = 0; i < t.m_su; ++i) {
        const auto& n = t.nodes[static_cast<std::size_t>(i)];
        CHECK(n.id == i);
        CHECK(n.kind == crn::NodeKind::Su);
        CHECK(std::is_sorted(n.channels.begin(), n.channels.end()));
        CHECK(std::adjacent_find(n.channels.begin(), n.channels.end()) == n.channels.end());
        for (int c : n.channels) {
            CHECK(c >= 0);
            CHECK(c < t.n_channels);
        }
        CHECK(std::is_sorted(t.su_adj[static_cast<std::size_t>(i)].begin(),
                             t.su_adj[static_cast<std::size_t>(i)].end()));
    }
    for (std::size_t e = 0; e < t.su_edges.size(); ++e) {
        const auto& [u, v] = t.su_edges[e];
        CHECK(u < v);
        CHECK(t.adjacent(u, v));
        CHECK(t.adjacent(v, u));
        if (e > 0) CHECK(t.su_edges[e - 1] < t.su_edges[e]);
    }
    std::size_t adj_total = 0;
    for (const auto& nb : t.su_adj) adj_total += nb.size();
    CHECK(adj_total == 2 * t.su_edges.size());
}

TEST_CASE("area rescaling lands the mean degree inside the tolerance band") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        CAPTURE(seed);
        crn::TopologyParams p;  // defaults: 100 SUs, target 4, tolerance 0.1
        const auto t = crn::generate_topology(p, seed);
        const double d = crn::mean_degree(t);
        CHECK(d >= 4.0 * 0.9 - 1e-9);
        CHECK(d <= 4.0 * 1.1 + 1e-9);
    }
}

TEST_CASE("connectivity can be required and availability only grows channel sets") {
    auto p = small_params(40);
    p.require_connected = true;
    const auto t = crn::generate_topology(p, 9);
    CHECK(crn::su_graph_connected(t));

    // Same seed, higher availability: identical placement, supersets of channels.
    auto lo = small_params(25, 0.5);
    auto hi = small_params(25, 0.8);
    const auto tl = crn::generate_topology(lo, 33);
    const auto th = crn::generate_topology(hi, 33);
    for (int i = 0; i < 25; ++i) {
        const auto& a = tl.nodes[static_cast<std::size_t>(i)];
        const auto& b = th.nodes[static_cast<std::size_t>(i)];
        CHECK(a.x == b.x);
        CHECK(a.y == b.y);
        CHECK(std::includes(b.channels.begin(), b.channels.end(), a.channels.begin(),
                            a.channels.end()));
    }

    auto full = small_params(10, 1.0);
    const auto tf = crn::generate_topology(full, 3);
    for (int i = 0; i < 10; ++i)
        CHECK(tf.nodes[static_cast<std::size_t>(i)].channels.size() ==
              static_cast<std::size_t>(tf.n_channels));
}

TEST_CASE("generation is reproducible and parameter checks fire") {
    const auto a = crn::generate_topology(small_params(20), 17);
    const auto b = crn::generate_topology(small_params(20), 17);
    CHECK(a.su_edges == b.su_edges);
    for (std::size_t i = 0; i < a.nodes.size(); ++i) {
        CHECK(a.nodes[i].x == b.nodes[i].x);
        CHECK(a.nodes[i].channels == b.nodes[i].channels);
    }

    auto bad = small_params(0);
    CHECK_THROWS_AS(crn::generate_topology(bad, 1), crn::ParameterError);
    auto neg = small_params(10);
    neg.channel_availability = 1.5;
    CHECK_THROWS_AS(crn::generate_topology(neg, 1), crn::ParameterError);
    auto zero_range = small_params(10);
    zero_range.su_range = 0.0;
    CHECK_THROWS_AS(crn::generate_topology(zero_range, 1), crn::ParameterError);
}

TEST_CASE("topology text form round-trips") {
    const auto t = crn::generate_topology(small_params(15), 21);
    const auto text = crn::serialize_topology(t);
    const auto back = crn::parse_topology(text);

    CHECK(back.m_su == t.m_su);
    CHECK(back.n_pu == t.n_pu);
    CHECK(back.n_channels == t.n_channels);
    CHECK(back.su_edges == t.su_edges);
    REQUIRE(back.nodes.size() == t.nodes.size());
    for (std::size_t i = 0; i < t.nodes.size(); ++i) {
        CHECK(back.nodes[i].id == t.nodes[i].id);
        CHECK(back.nodes[i].x == t.nodes[i].x);  // bit-exact round-trip
        CHECK(back.nodes[i].y == t.nodes[i].y);
        CHECK(back.nodes[i].kind == t.nodes[i].kind);
        CHECK(back.nodes[i].radios == t.nodes[i].radios);
        CHECK(back.nodes[i].channels == t.nodes[i].channels);
    }
    CHECK(crn::serialize_topology(back) == text);

    CHECK_THROWS_AS(crn::parse_topology("garbage"), crn::IoError);
}
