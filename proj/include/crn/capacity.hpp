#pragma once

// Closed-form network-capacity model: per-broadcast link/node consumption,
// effective per-node capacity, the slot fraction left over after spectrum
// sensing, and the network-wide capacity that combines them with the
// multi-radio enhancement factor and the measured path length.

#include <string>

namespace crn {

struct ConsumptionParams {
    double gamma = 0.5;  // fraction of the initiator-side secondary links consumed
    double beta = 0.5;   // fraction of the responder-side secondary links consumed

    void validate() const;
};

struct CapacityParams {
    double t0 = 2e6;      // per-node available capacity (bits/s)
    double tau = 0.010;   // sensing time per slot (s)
    double t_slot = 0.100;  // slot length (s)
    double p_f = 0.2;     // false-alarm probability of the detector
    double p_d = 0.9;     // detection probability of the detector
    double p_h0 = 0.5;    // probability the channel is actually free
    double p_h1 = -1.0;   // probability the channel is actually busy; < 0 derives 1 - p_h0
    double factor_f = 1.0;  // multi-radio/multi-channel enhancement factor
    int m = 1;            // node count

    void validate() const;
    double busy_prob() const;  // p_h1, derived when unset
};

struct CapacityReport {
    int m = 0;
    double k = 0.0;
    double c_g = 0.0;
    double l_g = 1.0;
    double p_avg = 0.0;
    double factor_f = 1.0;
    double tau = 0.0;
    double t_slot = 1.0;
    double p_f = 0.0;
    double p_d = 1.0;
    double p_h0 = 1.0;
    double consumed_links_f = 0.0;  // symmetric-endpoint link consumption
    double consumed_nodes_k0 = 0.0;
    double t_prime = 0.0;           // effective per-node capacity (bits/s)
    double capa = 0.0;              // network capacity (bits/s)
    double capa_e = 0.0;            // effective capacity = capa / l_g (bits/s)
    double max_ratio = 0.0;         // diagnostic ratio m*t0 / (k0 * l_g)
};

// Links consumed by one transmission between endpoints A and B with degrees
// k_a/k_b and clustering c_a/c_b: the direct neighborhoods minus the shared
// edge, plus the partially consumed second-hop links weighted by gamma/beta.
double consumed_links(double k_a, double k_b, double c_a, double c_b,
                      const ConsumptionParams& cp = {});

// Mean nodes consumed per transmission in a graph of mean degree k,
// clustering c_g, and mean connectivity p_avg.
double consumed_nodes_avg(double k, double c_g, double p_avg);

// T' = t0 / consumed_nodes_avg(k, c_g, p_avg); p_avg = 0 is rejected.
double effective_per_node_capacity(double t0, double k, double c_g, double p_avg);

// Fraction of a slot usable for secondary data once sensing overhead and
// detector errors are accounted for:
//   (1 - tau/t_slot) * ((1-p_f)*p_h0 + (1-p_d)*p_h1).
double sensing_factor(const CapacityParams& p);

// Capa = m * T' * F * sensing_factor; Capa_e = Capa / l_g.
CapacityReport network_capacity(const CapacityParams& p, double k, double c_g, double l_g,
                                double p_avg, const ConsumptionParams& cp = {});

enum class FactorPolicy {
    MinRadiosChannels,  // F = min(R, N): parallel links bounded by radios and channels
    KyasanurRatio,      // F = sqrt(R / N): capacity-bound ratio vs a single-channel baseline
};

// Multi-radio/multi-channel enhancement factor. The node count and channel
// rate cancel in both policies' ratios and are accepted only for interface
// uniformity.
double mrmc_factor(int m, int radios_r, int channels_n, double w,
                   FactorPolicy policy = FactorPolicy::MinRadiosChannels);

const char* factor_policy_name(FactorPolicy p);

// One CSV row per report (header field order is fixed and stable).
std::string capacity_csv_header();
std::string capacity_csv_row(const CapacityReport& r);

}  // namespace crn
