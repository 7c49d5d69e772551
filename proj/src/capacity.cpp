#include "crn/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "crn/error.hpp"

namespace crn {

namespace {

void check_prob(double v, const char* name) {
    if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
        throw ParameterError(std::string(name) + " must be a probability in [0, 1]");
    }
}

}  // namespace

void ConsumptionParams::validate() const {
    check_prob(gamma, "gamma");
    check_prob(beta, "beta");
}

void CapacityParams::validate() const {
    if (!std::isfinite(t0) || t0 <= 0.0) throw ParameterError("t0 must be positive");
    if (!std::isfinite(t_slot) || t_slot <= 0.0) throw ParameterError("slot length must be positive");
    if (!std::isfinite(tau) || tau < 0.0) throw ParameterError("sensing time must be non-negative");
    if (tau > t_slot) throw ParameterError("sensing time cannot exceed the slot length");
    check_prob(p_f, "false-alarm probability");
    check_prob(p_d, "detection probability");
    check_prob(p_h0, "channel-free probability");
    if (p_h1 >= 0.0) {
        check_prob(p_h1, "channel-busy probability");
        if (std::abs(p_h0 + p_h1 - 1.0) > 1e-9) {
            throw ParameterError("channel-free and channel-busy probabilities must sum to 1");
        }
    }
    if (!std::isfinite(factor_f) || factor_f <= 0.0) {
        throw ParameterError("enhancement factor must be positive");
    }
    if (m < 1) throw ParameterError("node count must be at least 1");
}

double CapacityParams::busy_prob() const { return p_h1 >= 0.0 ? p_h1 : 1.0 - p_h0; }

double consumed_links(double k_a, double k_b, double c_a, double c_b,
                      const ConsumptionParams& cp) {
    cp.validate();
    if (!std::isfinite(k_a) || k_a < 1.0 || !std::isfinite(k_b) || k_b < 1.0) {
        throw ParameterError("endpoint degrees must be at least 1");
    }
    check_prob(c_a, "clustering coefficient");
    check_prob(c_b, "clustering coefficient");
    const double second_hop_b = c_b * k_b * (k_b - 1.0) * (1.0 - 1.0 / k_b);
    const double second_hop_a = c_a * k_a * (k_a - 1.0) * (1.0 - 1.0 / k_a);
    return 2.0 * k_a + 2.0 * k_b - 2.0 + cp.beta * second_hop_b + cp.gamma * second_hop_a;
}

double consumed_nodes_avg(double k, double c_g, double p_avg) {
    if (!std::isfinite(k) || k < 1.0) throw ParameterError("mean degree must be at least 1");
    check_prob(c_g, "clustering coefficient");
    check_prob(p_avg, "mean connectivity");
    return p_avg * ((4.0 - 2.0 / k) + c_g * (k - 1.0) * (1.0 - 1.0 / k));
}

double effective_per_node_capacity(double t0, double k, double c_g, double p_avg) {
    if (!std::isfinite(t0) || t0 <= 0.0) throw ParameterError("t0 must be positive");
    const double k0 = consumed_nodes_avg(k, c_g, p_avg);
    if (k0 <= 0.0) {
        throw ParameterError("mean connectivity of 0 leaves no consumed nodes to normalize by");
    }
    return t0 / k0;
}

double sensing_factor(const CapacityParams& p) {
    p.validate();
    const double data_fraction = 1.0 - p.tau / p.t_slot;
    const double access_prob = (1.0 - p.p_f) * p.p_h0 + (1.0 - p.p_d) * p.busy_prob();
    return data_fraction * access_prob;
}

CapacityReport network_capacity(const CapacityParams& p, double k, double c_g, double l_g,
                                double p_avg, const ConsumptionParams& cp) {
    p.validate();
    if (!std::isfinite(l_g) || l_g < 1.0) throw ParameterError("path length must be at least 1");

    CapacityReport r;
    r.m = p.m;
    r.k = k;
    r.c_g = c_g;
    r.l_g = l_g;
    r.p_avg = p_avg;
    r.factor_f = p.factor_f;
    r.tau = p.tau;
    r.t_slot = p.t_slot;
    r.p_f = p.p_f;
    r.p_d = p.p_d;
    r.p_h0 = p.p_h0;
    r.consumed_links_f = consumed_links(k, k, c_g, c_g, cp);
    r.consumed_nodes_k0 = consumed_nodes_avg(k, c_g, p_avg);
    r.t_prime = effective_per_node_capacity(p.t0, k, c_g, p_avg);
    r.capa = static_cast<double>(p.m) * r.t_prime * p.factor_f * sensing_factor(p);
    r.capa_e = r.capa / l_g;
    r.max_ratio = static_cast<double>(p.m) * p.t0 / (r.consumed_nodes_k0 * l_g);
    return r;
}

double mrmc_factor(int m, int radios_r, int channels_n, double w, FactorPolicy policy) {
    (void)m;
    (void)w;
    if (radios_r < 1) throw ParameterError("radio count must be at least 1");
    if (channels_n < 1) throw ParameterError("channel count must be at least 1");
    switch (policy) {
        case FactorPolicy::MinRadiosChannels:
            return static_cast<double>(std::min(radios_r, channels_n));
        case FactorPolicy::KyasanurRatio:
            return std::sqrt(static_cast<double>(radios_r) / static_cast<double>(channels_n));
    }
    throw ParameterError("unknown enhancement-factor policy");
}

const char* factor_policy_name(FactorPolicy p) {
    switch (p) {
        case FactorPolicy::MinRadiosChannels: return "min-radios-channels";
        case FactorPolicy::KyasanurRatio: return "kyasanur-ratio";
    }
    throw ParameterError("unknown enhancement-factor policy");
}

std::string capacity_csv_header() {
    return "m,k,cg,lg,pavg,f_factor,tau,ts,pf,pd,ph0,t_prime,capa,capa_e";
}

std::string capacity_csv_row(const CapacityReport& r) {
    char buf[512];
    std::snprintf(buf, sizeof(buf),
                  "%d,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g",
                  r.m, r.k, r.c_g, r.l_g, r.p_avg, r.factor_f, r.tau, r.t_slot, r.p_f, r.p_d,
                  r.p_h0, r.t_prime, r.capa, r.capa_e);
    return buf;
}

}  // namespace crn
