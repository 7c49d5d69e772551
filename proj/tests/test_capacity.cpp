#include <cmath>
#include <string>

#include "crn/capacity.hpp"
#include "crn/error.hpp"
#include "doctest.h"

TEST_CASE("link consumption of a symmetric transmission") {
    CHECK(crn::consumed_links(4, 4, 0.4, 0.4) == doctest::Approx(17.6).epsilon(1e-12));
    // No clustering: only the direct neighborhoods are consumed.
    CHECK(crn::consumed_links(3, 5, 0.0, 0.0) == doctest::Approx(14.0).epsilon(1e-12));
    // Degree-1 endpoints: the shared link itself.
    CHECK(crn::consumed_links(1, 1, 1.0, 1.0) == doctest::Approx(2.0).epsilon(1e-12));

    CHECK_THROWS_AS(crn::consumed_links(0.5, 4, 0.4, 0.4), crn::ParameterError);
    CHECK_THROWS_AS(crn::consumed_links(4, 4, 1.4, 0.4), crn::ParameterError);
    crn::ConsumptionParams bad;
    bad.gamma = -0.1;
    CHECK_THROWS_AS(crn::consumed_links(4, 4, 0.4, 0.4, bad), crn::ParameterError);
}

TEST_CASE("node consumption and effective per-node capacity") {
    CHECK(crn::consumed_nodes_avg(4, 0.4, 1.0) == doctest::Approx(4.4).epsilon(1e-12));
    CHECK(crn::consumed_nodes_avg(4, 0.4, 0.5) == doctest::Approx(2.2).epsilon(1e-12));
    CHECK(crn::consumed_nodes_avg(1, 0.7, 1.0) == doctest::Approx(2.0).epsilon(1e-12));

    CHECK(crn::effective_per_node_capacity(2.0, 4, 0.4, 0.5) ==
          doctest::Approx(2.0 / 2.2).epsilon(1e-12));
    CHECK_THROWS_AS(crn::effective_per_node_capacity(2.0, 4, 0.4, 0.0), crn::ParameterError);
    CHECK_THROWS_AS(crn::effective_per_node_capacity(0.0, 4, 0.4, 0.5), crn::ParameterError);
    CHECK_THROWS_AS(crn::consumed_nodes_avg(0.5, 0.4, 0.5), crn::ParameterError);
}

TEST_CASE("full-connectivity node consumption equals link consumption per degree") {
    // With p_avg = 1 and symmetric endpoints, counting consumed nodes directly
    // or dividing consumed links by the degree must agree.
    for (double k : {1.0, 2.0, 3.7, 4.0, 9.0}) {
        for (double c : {0.0, 0.3, 1.0}) {
            CAPTURE(k);
            CAPTURE(c);
            const double by_nodes = crn::consumed_nodes_avg(k, c, 1.0);
            const double by_links = crn::consumed_links(k, k, c, c) / k;
            CHECK(by_nodes == doctest::Approx(by_links).epsilon(1e-12));
        }
    }
}

TEST_CASE("sensing factor blends overhead and detector errors") {
    crn::CapacityParams p;  // tau 10 ms of a 100 ms slot, pf 0.2, pd 0.9, ph0 0.5
    CHECK(crn::sensing_factor(p) == doctest::Approx(0.405).epsilon(1e-12));

    p.tau = p.t_slot;  // sensing eats the whole slot
    CHECK(crn::sensing_factor(p) == doctest::Approx(0.0).epsilon(1e-12));

    p.tau = 0.2;  // longer than the slot
    CHECK_THROWS_AS(crn::sensing_factor(p), crn::ParameterError);

    crn::CapacityParams explicit_h1;
    explicit_h1.p_h1 = 0.5;
    CHECK(crn::sensing_factor(explicit_h1) == doctest::Approx(0.405).epsilon(1e-12));
    explicit_h1.p_h1 = 0.6;  // 0.5 + 0.6 != 1
    CHECK_THROWS_AS(crn::sensing_factor(explicit_h1), crn::ParameterError);

    crn::CapacityParams perfect;
    perfect.tau = 0.0;
    perfect.p_f = 0.0;
    perfect.p_d = 1.0;
    perfect.p_h0 = 1.0;
    CHECK(crn::sensing_factor(perfect) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("network capacity chain on the reference operating point") {
    crn::CapacityParams p;
    p.m = 100;
    p.factor_f = 4.0;
    const auto r = crn::network_capacity(p, 4.0, 0.4, 4.0, 0.5);
    CHECK(r.t_prime == doctest::Approx(1e7 / 11.0).epsilon(1e-12));
    CHECK(r.capa == doctest::Approx(1.62e9 / 11.0).epsilon(1e-9));
    CHECK(r.capa_e == doctest::Approx(4.05e8 / 11.0).epsilon(1e-9));
    CHECK(r.capa / 1e6 == doctest::Approx(147.27).epsilon(1e-4));    // megabit scale
    CHECK(r.capa_e / 1e6 == doctest::Approx(36.82).epsilon(1e-3));
    CHECK(r.max_ratio == doctest::Approx(2e8 / 8.8).epsilon(1e-12));
    CHECK(r.consumed_nodes_k0 == doctest::Approx(2.2).epsilon(1e-12));
    CHECK(r.consumed_links_f == doctest::Approx(17.6).epsilon(1e-12));

    // The effective capacity always restores the raw capacity when multiplied
    // by the path length.
    CHECK(r.capa_e * r.l_g == doctest::Approx(r.capa).epsilon(1e-9));
    const auto longer = crn::network_capacity(p, 4.0, 0.4, 7.5, 0.5);
    CHECK(longer.capa_e * longer.l_g == doctest::Approx(longer.capa).epsilon(1e-9));
    CHECK(longer.capa == doctest::Approx(r.capa).epsilon(1e-12));  // path length cancels

    CHECK_THROWS_AS(crn::network_capacity(p, 4.0, 0.4, 0.5, 0.5), crn::ParameterError);
    CHECK_THROWS_AS(crn::network_capacity(p, 4.0, 0.4, 4.0, 0.0), crn::ParameterError);
    crn::CapacityParams bad = p;
    bad.m = 0;
    CHECK_THROWS_AS(crn::network_capacity(bad, 4.0, 0.4, 4.0, 0.5), crn::ParameterError);
    crn::CapacityParams dark = p;
    dark.factor_f = 0.0;
    CHECK_THROWS_AS(crn::network_capacity(dark, 4.0, 0.4, 4.0, 0.5), crn::ParameterError);
}

TEST_CASE("multi-radio enhancement factor policies") {
    CHECK(crn::mrmc_factor(100, 4, 12, 2e6) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(crn::mrmc_factor(100, 16, 12, 2e6) == doctest::Approx(12.0).epsilon(1e-12));
    CHECK(crn::mrmc_factor(100, 4, 12, 2e6, crn::FactorPolicy::KyasanurRatio) ==
          doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-12));
    CHECK_THROWS_AS(crn::mrmc_factor(100, 0, 12, 2e6), crn::ParameterError);
    CHECK_THROWS_AS(crn::mrmc_factor(100, 4, 0, 2e6), crn::ParameterError);

    CHECK(std::string(crn::factor_policy_name(crn::FactorPolicy::MinRadiosChannels)) ==
          "min-radios-channels");
    CHECK(std::string(crn::factor_policy_name(crn::FactorPolicy::KyasanurRatio)) ==
          "kyasanur-ratio");
}

TEST_CASE("capacity report renders a stable CSV row") {
    CHECK(crn::capacity_csv_header() == "m,k,cg,lg,pavg,f_factor,tau,ts,pf,pd,ph0,t_prime,capa,capa_e");
    crn::CapacityParams p;
    p.m = 100;
    p.factor_f = 4.0;
    const auto r = crn::network_capacity(p, 4.0, 0.4, 4.0, 0.5);
    CHECK(crn::capacity_csv_row(r) ==
          "100,4,0.4,4,0.5,4,0.01,0.1,0.2,0.9,0.5,909090.9091,147272727.3,36818181.82");
}
