#include <cmath>
#include <limits>
#include <vector>

#include "crn/assignment.hpp"
#include "crn/error.hpp"
#include "crn/shortcuts.hpp"
#include "doctest.h"
#include "oracles.hpp"

namespace {

crn::ChannelTiming timing(int channel, double delta) {
    crn::ChannelTiming t;
    t.channel = channel;
    t.t_v = delta + 1.0;
    t.t_r = 1.0;
    t.delta = delta;
    return t;
}

// Channels 0..2 with slacks 8, 1, -1: channel 2 can never fit a packet.
std::vector<crn::ChannelTiming> three_channel_timings() {
    return {timing(0, 8.0), timing(1, 1.0), timing(2, -1.0)};
}

crn::NodeContext basic_context(std::vector<int> avai, std::vector<std::vector<int>> nb,
                               int radios) {
    crn::NodeContext ctx;
    ctx.node_id = 0;
    ctx.avai = std::move(avai);
    ctx.neighbor_avai = std::move(nb);
    ctx.radios = radios;
    return ctx;
}

}  // namespace

TEST_CASE("timing estimate: idle window, transmission time and slack") {
    crn::QueueParams q;
    q.lambda_p = 0.2;
    q.mu_p = 0.4;
    const auto t = crn::estimate_timing(q, 1000000, 2e6, 7);
    CHECK(t.channel == 7);
    CHECK(t.t_v == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(t.t_r == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(t.delta == doctest::Approx(4.5).epsilon(1e-12));

    crn::QueueParams quiet;  // no primary traffic: the channel never closes
    const auto open = crn::estimate_timing(quiet, 4096, 2e6);
    CHECK(std::isinf(open.t_v));
    CHECK(std::isinf(open.delta));

    CHECK_THROWS_AS(crn::estimate_timing(q, 0, 2e6), crn::ParameterError);
    CHECK_THROWS_AS(crn::estimate_timing(q, 4096, 0.0), crn::ParameterError);
    CHECK_THROWS_AS(crn::estimate_timing(q, 4096, -1.0), crn::ParameterError);
}

TEST_CASE("plain assignment takes tightest usable slack first and drops negatives") {
    const auto timings = three_channel_timings();
    const auto ctx = basic_context({0, 1, 2}, {{0, 1, 2}}, 2);
    const auto a = crn::assign_channels(ctx, timings);
    CHECK(a.radio_channels == std::vector<int>{1, 0});  // slack 1 before slack 8, no channel 2
    CHECK(a.reserved == 0);
    CHECK(a.radios == 2);
    CHECK(a.unassigned() == 0);
    CHECK_FALSE(a.shortcut_radio());

    const auto one = crn::assign_channels(basic_context({0, 1, 2}, {{0, 1, 2}}, 1), timings);
    CHECK(one.radio_channels == std::vector<int>{1});

    // The pool is limited to channels a physical neighbor also holds.
    const auto narrow = crn::assign_channels(basic_context({0, 1, 2}, {{1}}, 2), timings);
    CHECK(narrow.radio_channels == std::vector<int>{1});
    CHECK(narrow.unassigned() == 1);

    // All shared channels unusable: radios stay dark.
    const auto dark = crn::assign_channels(basic_context({2}, {{2}}, 2), timings);
    CHECK(dark.radio_channels.empty());
    CHECK(dark.unassigned() == 2);
}

TEST_CASE("shortcut endpoints reserve the tightest channel shared with the partner") {
    const auto timings = three_channel_timings();
    auto ctx = basic_context({0, 1, 2}, {{0, 1, 2}}, 2);
    ctx.shortcut_partners = {{0, 2}};  // common usable channel: only 0 (2 has negative slack)
    const auto a = crn::assign_channels(ctx, timings);
    CHECK(a.radio_channels == std::vector<int>{0, 1});
    CHECK(a.reserved == 1);
    CHECK(a.shortcut_radio());

    // The partner runs the same rule from its side and lands on channel 0 too.
    auto partner = basic_context({0, 2}, {{0, 2}}, 2);
    partner.shortcut_partners = {{0, 1, 2}};
    const auto b = crn::assign_channels(partner, timings);
    REQUIRE_FALSE(b.radio_channels.empty());
    CHECK(b.radio_channels.front() == 0);
    CHECK(b.reserved == 1);

    // A reserved channel may ride on the shortcut alone: channel 3 is shared
    // with the partner but with no physical neighbor.
    const std::vector<crn::ChannelTiming> four = {timing(0, 8.0), timing(3, 2.0)};
    auto lonely = basic_context({0, 3}, {{0}}, 2);
    lonely.shortcut_partners = {{3}};
    const auto c = crn::assign_channels(lonely, four);
    CHECK(c.radio_channels == std::vector<int>{3, 0});
    CHECK(c.reserved == 1);
}

TEST_CASE("reservation fallback, dedup and the radios-1 cap") {
    const auto timings = three_channel_timings();

    // Disjoint channels with the first partner: reserve the best local channel
    // so the radio still comes up.
    auto ctx = basic_context({0, 1, 2}, {{0, 1, 2}}, 2);
    ctx.shortcut_partners = {{5}};
    const auto fallback = crn::assign_channels(ctx, timings);
    CHECK(fallback.radio_channels == std::vector<int>{1, 0});
    CHECK(fallback.reserved == 1);

    // Only the first partner gets the fallback. A later partner with no common
    // channel is skipped.
    auto two = basic_context({0, 1, 2}, {{0, 1, 2}}, 3);
    two.shortcut_partners = {{0, 1, 2}, {5}};
    const auto skipped = crn::assign_channels(two, timings);
    CHECK(skipped.reserved == 1);
    CHECK(skipped.radio_channels == std::vector<int>{1, 0});

    // Two partners sharing the same tightest channel collapse into one
    // reserved radio.
    auto dup = basic_context({0, 1, 2}, {{0, 1, 2}}, 3);
    dup.shortcut_partners = {{0, 1}, {1, 2}};
    const auto merged = crn::assign_channels(dup, timings);
    CHECK(merged.reserved == 1);
    CHECK(merged.radio_channels == std::vector<int>{1, 0});

    // Reservations never starve the data side: at most radios-1 channels.
    const std::vector<crn::ChannelTiming> wide = {timing(0, 1.0), timing(1, 2.0),
                                                  timing(2, 3.0), timing(3, 4.0)};
    auto many = basic_context({0, 1, 2, 3}, {{0, 1, 2, 3}}, 3);
    many.shortcut_partners = {{0}, {1}, {2}};
    const auto capped = crn::assign_channels(many, wide);
    CHECK(capped.reserved == 2);
    CHECK(capped.radio_channels == std::vector<int>{0, 1, 2});

    // A shortcut endpoint with a single radio cannot serve both roles.
    auto cramped = basic_context({0, 1}, {{0, 1}}, 1);
    cramped.shortcut_partners = {{0}};
    CHECK_THROWS_AS(crn::assign_channels(cramped, timings), crn::ParameterError);
}

TEST_CASE("random assignment draws distinct shared channels") {
    auto ctx = basic_context({0, 1, 2, 3}, {{0, 1}, {2, 3}}, 3);
    const auto a = crn::assign_random(ctx, 42);
    CHECK(a.radios == 3);
    CHECK(a.reserved == 0);
    CHECK(a.radio_channels.size() == 3);  // pool has 4 channels, 3 radios
    std::vector<int> seen = a.radio_channels;
    std::sort(seen.begin(), seen.end());
    CHECK(std::adjacent_find(seen.begin(), seen.end()) == seen.end());
    for (int c : seen) CHECK((c >= 0 && c <= 3));

    CHECK(crn::assign_random(ctx, 42).radio_channels == a.radio_channels);

    // Pool smaller than the radio count: take what exists.
    auto small = basic_context({0, 1, 2, 3}, {{1}}, 3);
    const auto b = crn::assign_random(small, 7);
    CHECK(b.radio_channels == std::vector<int>{1});
    CHECK(b.unassigned() == 2);
}

TEST_CASE("mode names") {
    CHECK(std::string(crn::assign_mode_name(crn::AssignMode::ChannelAware)) == "channel-aware");
    CHECK(std::string(crn::assign_mode_name(crn::AssignMode::Random)) == "random");
}

TEST_CASE("whole-network assignment wires shortcut endpoints together") {
    // Path 0-1-2-3 plus one shortcut between the ends; everyone holds all
    // three channels except the inner nodes, which lack channel 2.
    auto t = oracle::build_fixture({{0, 0}, {1, 0}, {2, 0}, {3, 0}},
                                   {{0, 1}, {1, 2}, {2, 3}},
                                   {{0, 1, 2}, {0, 1}, {0, 1}, {0, 1, 2}}, 3, 2);
    crn::ShortcutPlan plan;
    plan.method = crn::ShortcutMethod::Nsc;
    plan.shortcuts = {{0, 3}};
    const std::vector<crn::ChannelTiming> timings = {timing(0, 5.0), timing(1, 2.0),
                                                     timing(2, 7.0)};

    const auto ca = crn::assign_all(t, plan, timings, crn::AssignMode::ChannelAware, 1);
    REQUIRE(ca.per_node.size() == 4);
    CHECK(ca.per_node[0].reserved == 1);
    CHECK(ca.per_node[3].reserved == 1);
    CHECK(ca.per_node[0].radio_channels.front() == ca.per_node[3].radio_channels.front());
    CHECK(ca.per_node[0].radio_channels.front() == 1);  // tightest shared slack
    CHECK(ca.per_node[1].reserved == 0);
    CHECK(ca.link_usable(0, 3));
    CHECK(ca.link_usable(0, 1));
    CHECK(ca.link_usable(1, 2));
    CHECK(ca.link_usable(2, 3));

    // Random mode ignores shortcut structure entirely.
    const auto rnd = crn::assign_all(t, plan, timings, crn::AssignMode::Random, 1);
    for (const auto& na : rnd.per_node) CHECK(na.reserved == 0);
    CHECK(crn::assign_all(t, plan, timings, crn::AssignMode::Random, 1) == rnd);
}

TEST_CASE("assigned channels always have non-negative slack in channel-aware mode") {
    crn::TopologyParams p;
    p.m_su = 25;
    p.n_pu = 2;
    p.area_w = 300.0;
    p.area_h = 300.0;
    p.su_range = 60.0;
    p.radios = 3;
    p.n_channels = 4;
    p.channel_availability = 0.8;
    p.degree_target = 3.0;
    p.degree_tolerance = 0.2;
    const auto t = crn::generate_topology(p, 11);
    const std::vector<crn::ChannelTiming> timings = {timing(0, 4.0), timing(1, 0.5),
                                                     timing(2, 9.0), timing(3, -2.0)};
    const auto plan = crn::build_plan_rs(t, 4, 3);
    const auto a = crn::assign_all(t, plan, timings, crn::AssignMode::ChannelAware, 1);
    for (const auto& na : a.per_node) {
        for (int c : na.radio_channels) {
            CHECK(c != 3);
            for (const auto& tm : timings)
                if (tm.channel == c) CHECK(tm.delta >= 0.0);
        }
    }
}

TEST_CASE("reassignment after a primary arrival touches only the affected nodes") {
    auto t = oracle::build_fixture({{0, 0}, {1, 0}, {2, 0}, {3, 0}},
                                   {{0, 1}, {1, 2}, {2, 3}},
                                   {{0, 1}, {0, 1}, {0, 1}, {0, 1}}, 2, 2);
    crn::ShortcutPlan plan;  // no shortcuts
    const std::vector<crn::ChannelTiming> timings = {timing(0, 1.0), timing(1, 3.0)};
    const auto before = crn::assign_all(t, plan, timings, crn::AssignMode::ChannelAware, 9);
    CHECK(before.per_node[1].radio_channels == std::vector<int>{0, 1});

    // A primary shows up on channel 0 around node 1: node 1 keeps channel 1 only.
    const std::vector<int> affected = {1};
    const auto after = crn::reassign_on_pu_arrival(t, plan, timings, crn::AssignMode::ChannelAware,
                                                   9, before, affected, {{1, {1}}});
    CHECK(after.per_node[0] == before.per_node[0]);
    CHECK(after.per_node[2] == before.per_node[2]);
    CHECK(after.per_node[3] == before.per_node[3]);
    CHECK(after.per_node[1].radio_channels == std::vector<int>{1});
    CHECK(after.per_node[1].unassigned() == 1);

    CHECK_THROWS_AS(crn::reassign_on_pu_arrival(t, plan, timings, crn::AssignMode::ChannelAware, 9,
                                                before, std::vector<int>{9}, {}),
                    crn::ParameterError);
    crn::Assignment wrong;
    CHECK_THROWS_AS(crn::reassign_on_pu_arrival(t, plan, timings, crn::AssignMode::ChannelAware, 9,
                                                wrong, affected, {}),
                    crn::ParameterError);
}

TEST_CASE("assignment text form round-trips") {
    auto t = oracle::build_fixture({{0, 0}, {1, 0}}, {{0, 1}}, {{0, 1}, {0, 1}}, 2, 2);
    crn::ShortcutPlan plan;
    const std::vector<crn::ChannelTiming> timings = {timing(0, 1.0), timing(1, 3.0)};
    const auto a = crn::assign_all(t, plan, timings, crn::AssignMode::ChannelAware, 1);
    const auto text = crn::serialize_assignment(a);
    const auto back = crn::parse_assignment(text);
    CHECK(back == a);
    CHECK(crn::serialize_assignment(back) == text);

    CHECK_THROWS_AS(crn::parse_assignment("x 0 radios=1 sc=0\n"), crn::IoError);
    CHECK_THROWS_AS(crn::parse_assignment("a 1 radios=1 sc=0\n"), crn::IoError);  // skips node 0
    CHECK_THROWS_AS(crn::parse_assignment("a 0 radios=1 sc=0 1:0\n"), crn::IoError);
    CHECK_THROWS_AS(crn::parse_assignment("a 0 radios=1 sc=0 zero\n"), crn::IoError);
}
