#pragma once

// Spectrum-opportunity model for one licensed channel shared by a licensed
// (primary) traffic stream and unlicensed (secondary) users. Primary traffic
// behaves as an M/M/1 queue with preemptive-resume priority over secondary
// traffic; the secondary users form an M/M/N/K queue over the N channels.

#include <cstdint>
#include <span>
#include <vector>

namespace crn {

struct QueueParams {
    double lambda_p = 0.0;  // primary arrival rate (per channel)
    double mu_p = 1.0;      // primary service rate
    double lambda_s = 0.0;  // secondary arrival rate (whole system)
    double mu_s = 1.0;      // secondary service rate (per server)
    int n_servers = 1;      // N: channels acting as servers for secondary users
    int k_capacity = 1;     // K: secondary system capacity (in service + queued)

    double rho_p() const { return lambda_p / mu_p; }
    double rho_s() const { return lambda_s / (n_servers * mu_s); }
};

// Throws ParameterError unless rates are finite/nonnegative, mu > 0,
// 1 <= N <= K, rho_p < 1 and rho_s < 1.
void validate(const QueueParams& q);

struct ChannelModel {
    std::vector<QueueParams> channels;  // one entry per licensed channel
    double data_rate_w = 0.0;           // channel data rate in bit/s
};

// Stationary probability that the primary user leaves the channel idle:
// 1 / (1 + rho_p).
double pu_idle_prob(const QueueParams& q);

// Stationary probability that no secondary user is in the system (M/M/N/K
// empty-system probability).
double su_all_idle_prob(const QueueParams& q);

// Stationary probability that exactly h secondary users are in the system,
// 0 <= h <= K.
double su_occupancy_dist(const QueueParams& q, int h);

// Expected number of channels concurrently held by secondary users,
// sum_h min(h, N) * P(h in system). Used to pick the integer occupancy level
// for link availability; rounded and clamped to [1, K] by callers.
double expected_active_su_channels(const QueueParams& q);

// Rounded/clamped integer form of the above.
int typical_su_occupancy(const QueueParams& q);

// Probability that one specific channel is simultaneously primary-idle and
// free of secondary users when h of the n_total channels carry secondary
// traffic: pu_idle * (h / n_total) * P(h). Requires 1 <= h <= K, n_total >= 1.
double link_channel_avail_prob(const QueueParams& q, int h, int n_total);

// Probability that at least one of the per-channel opportunities is available:
// 1 - prod_k (1 - p_k). Every element must lie in [0,1].
double link_connectivity(std::span<const double> per_channel);

// Dense per-link, per-channel availability components for a network of m
// nodes and n channels. Entry (i,j,k) is the probability that channel k can
// serve the ordered link i -> j; the diagonal is ignored by mean_connectivity.
struct LinkComponentMatrix {
    int m = 0;
    int n = 0;
    std::vector<double> p;  // m*m*n, row-major (i, j, k)

    LinkComponentMatrix() = default;
    LinkComponentMatrix(int m_, int n_, double fill = 0.0);
    double& at(int i, int j, int k);
    double at(int i, int j, int k) const;
};

// Network mean connectivity: sum over ordered pairs i != j and channels k of
// p(i,j,k), divided by n * m * (m-1). Requires m >= 2.
double mean_connectivity(const LinkComponentMatrix& c);

// Discrete-event simulation of the two-priority preemptive-resume system.
// Each channel alternates between exponential primary-idle and primary-held
// periods (arrivals during a held period are absorbed by it); a primary
// arrival preempts the secondary job on its channel, which resumes with its
// remaining service time at the head of the queue.
struct DesResult {
    double pu_idle_fraction = 0.0;         // time-average over channels
    std::vector<double> su_state_fraction; // time fraction with h = 0..K in system
    double sim_time = 0.0;
    std::uint64_t events = 0;
    std::uint64_t blocked_arrivals = 0;
};

DesResult des_oracle(const QueueParams& q, std::uint64_t horizon_events, std::uint64_t seed);

}  // namespace crn
