#include "crn/sop.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "crn/error.hpp"
#include "crn/rng.hpp"

namespace crn {

void validate(const QueueParams& q) {
    auto bad = [](const std::string& what) { throw ParameterError("QueueParams: " + what); };
    if (!(q.lambda_p >= 0.0) || !std::isfinite(q.lambda_p)) bad("lambda_p must be finite and >= 0");
    if (!(q.mu_p > 0.0) || !std::isfinite(q.mu_p)) bad("mu_p must be finite and > 0");
    if (!(q.lambda_s >= 0.0) || !std::isfinite(q.lambda_s)) bad("lambda_s must be finite and >= 0");
    if (!(q.mu_s > 0.0) || !std::isfinite(q.mu_s)) bad("mu_s must be finite and > 0");
    if (q.n_servers < 1) bad("n_servers must be >= 1");
    if (q.k_capacity < q.n_servers) bad("k_capacity must be >= n_servers");
    if (!(q.rho_p() < 1.0)) bad("primary utilization rho_p must be < 1");
    if (!(q.rho_s() < 1.0)) bad("secondary utilization rho_s must be < 1");
}

double pu_idle_prob(const QueueParams& q) {
    validate(q);
    return 1.0 / (1.0 + q.rho_p());
}

namespace {

// log of (N*rho_s)^h / h!  (the below-N branch of the occupancy distribution)
double log_term_low(double n_rho, int h) {
    return h * std::log(n_rho) - std::lgamma(h + 1.0);
}

// log of N^N * rho_s^h / N!  (the at-or-above-N branch)
double log_term_high(double n, double rho, int h) {
    return n * std::log(n) + h * std::log(rho) - std::lgamma(n + 1.0);
}

}  // namespace

double su_all_idle_prob(const QueueParams& q) {
    validate(q);
    if (q.lambda_s == 0.0) return 1.0;
    const int n = q.n_servers;
    const int k = q.k_capacity;
    const double rho = q.rho_s();
    const double n_rho = n * rho;  // = lambda_s / mu_s
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += std::exp(log_term_low(n_rho, i));
    // Tail term: sum_{i=N..K} N^N rho^i / N! collapses to the finite geometric
    // series N^N rho^N (1 - rho^{K-N+1}) / (N! (1 - rho)).
    double geo;
    if (std::abs(1.0 - rho) < 1e-12) {
        geo = static_cast<double>(k - n + 1);
    } else {
        geo = (1.0 - std::pow(rho, k - n + 1)) / (1.0 - rho);
    }
    sum += std::exp(log_term_high(n, rho, n)) * geo;
    return 1.0 / sum;
}

double su_occupancy_dist(const QueueParams& q, int h) {
    validate(q);
    if (h < 0 || h > q.k_capacity)
        throw ParameterError("su_occupancy_dist: h must lie in [0, k_capacity]");
    if (q.lambda_s == 0.0) return h == 0 ? 1.0 : 0.0;
    const double p0 = su_all_idle_prob(q);
    const int n = q.n_servers;
    const double rho = q.rho_s();
    if (h == 0) return p0;
    if (h < n) return std::exp(log_term_low(n * rho, h)) * p0;
    return std::exp(log_term_high(n, rho, h)) * p0;
}

double expected_active_su_channels(const QueueParams& q) {
    validate(q);
    double e = 0.0;
    for (int h = 1; h <= q.k_capacity; ++h)
        e += std::min(h, q.n_servers) * su_occupancy_dist(q, h);
    return e;
}

int typical_su_occupancy(const QueueParams& q) {
    const double e = expected_active_su_channels(q);
    int h = static_cast<int>(std::lround(e));
    return std::clamp(h, 1, q.k_capacity);
}

double link_channel_avail_prob(const QueueParams& q, int h, int n_total) {
    validate(q);
    if (n_total < 1) throw ParameterError("link_channel_avail_prob: n_total must be >= 1");
    if (h < 1 || h > q.k_capacity)
        throw ParameterError("link_channel_avail_prob: h must lie in [1, k_capacity]");
    return pu_idle_prob(q) * (static_cast<double>(h) / n_total) * su_occupancy_dist(q, h);
}

double link_connectivity(std::span<const double> per_channel) {
    double miss = 1.0;
    for (double p : per_channel) {
        if (!(p >= 0.0 && p <= 1.0))
            throw ParameterError("link_connectivity: probabilities must lie in [0,1]");
        miss *= 1.0 - p;
    }
    return 1.0 - miss;
}

LinkComponentMatrix::LinkComponentMatrix(int m_, int n_, double fill)
    : m(m_), n(n_), p(static_cast<std::size_t>(m_) * m_ * n_, fill) {}

double& LinkComponentMatrix::at(int i, int j, int k) {
    return p[(static_cast<std::size_t>(i) * m + j) * n + k];
}

double LinkComponentMatrix::at(int i, int j, int k) const {
    return p[(static_cast<std::size_t>(i) * m + j) * n + k];
}

double mean_connectivity(const LinkComponentMatrix& c) {
    if (c.m < 2) throw ParameterError("mean_connectivity: need at least two nodes");
    if (c.n < 1) throw ParameterError("mean_connectivity: need at least one channel");
    double sum = 0.0;
    for (int i = 0; i < c.m; ++i) {
        for (int j = 0; j < c.m; ++j) {
            if (i == j) continue;
            for (int k = 0; k < c.n; ++k) {
                const double v = c.at(i, j, k);
                if (!(v >= 0.0 && v <= 1.0))
                    throw ParameterError("mean_connectivity: components must lie in [0,1]");
                sum += v;
            }
        }
    }
    return sum / (static_cast<double>(c.n) * c.m * (c.m - 1));
}

namespace {

constexpr double kNever = std::numeric_limits<double>::infinity();

}  // namespace

DesResult des_oracle(const QueueParams& q, std::uint64_t horizon_events, std::uint64_t seed) {
    validate(q);
    const int n = q.n_servers;
    const int k = q.k_capacity;
    std::mt19937_64 rng(mix_seed(seed, 0xd15c));

    // Per-channel primary state: the channel alternates between idle periods
    // (ended by the next primary arrival) and held periods (ended by the
    // primary departure); arrivals during a held period are absorbed by it.
    std::vector<char> pu_held(n, 0);
    std::vector<double> pu_arrival(n, kNever);
    std::vector<double> pu_departure(n, kNever);
    // Secondary jobs in service, by channel: remaining-service departure time.
    std::vector<double> su_departure(n, kNever);
    std::vector<char> su_busy(n, 0);
    // Secondary jobs waiting (front = next to serve; preempted jobs re-enter here).
    std::vector<double> wait_remaining;  // remaining service of queued jobs, front at index 0
    double su_arrival = kNever;

    if (q.lambda_p > 0.0)
        for (int c = 0; c < n; ++c) pu_arrival[c] = rand_exp(rng, q.lambda_p);
    if (q.lambda_s > 0.0) su_arrival = rand_exp(rng, q.lambda_s);

    int in_system = 0;
    double now = 0.0;
    DesResult res;
    res.su_state_fraction.assign(k + 1, 0.0);
    std::vector<double> pu_idle_time(n, 0.0);

    auto dispatch = [&](int c) {
        // Start the next waiting secondary job on channel c (must be primary-idle and free).
        if (wait_remaining.empty() || pu_held[c] || su_busy[c]) return;
        su_busy[c] = 1;
        su_departure[c] = now + wait_remaining.front();
        wait_remaining.erase(wait_remaining.begin());
    };

    while (res.events < horizon_events) {
        // Find the earliest pending event.
        double t = su_arrival;
        int kind = 0, chan = -1;  // 0 = su arrival, 1 = pu arrival, 2 = pu departure, 3 = su departure
        for (int c = 0; c < n; ++c) {
            if (pu_arrival[c] < t) { t = pu_arrival[c]; kind = 1; chan = c; }
            if (pu_departure[c] < t) { t = pu_departure[c]; kind = 2; chan = c; }
            if (su_departure[c] < t) { t = su_departure[c]; kind = 3; chan = c; }
        }
        if (!std::isfinite(t)) break;  // no traffic at all

        const double dt = t - now;
        res.su_state_fraction[in_system] += dt;
        for (int c = 0; c < n; ++c)
            if (!pu_held[c]) pu_idle_time[c] += dt;
        now = t;
        ++res.events;

        switch (kind) {
            case 0: {  // secondary arrival
                su_arrival = now + rand_exp(rng, q.lambda_s);
                if (in_system >= k) {
                    ++res.blocked_arrivals;
                    break;
                }
                ++in_system;
                wait_remaining.push_back(rand_exp(rng, q.mu_s));
                for (int c = 0; c < n && !wait_remaining.empty(); ++c) dispatch(c);
                break;
            }
            case 1: {  // primary arrival: an idle channel becomes held and any
                       // secondary job on it is preempted; a held channel absorbs it
                pu_arrival[chan] = now + rand_exp(rng, q.lambda_p);
                if (!pu_held[chan]) {
                    pu_held[chan] = 1;
                    if (su_busy[chan]) {
                        wait_remaining.insert(wait_remaining.begin(), su_departure[chan] - now);
                        su_busy[chan] = 0;
                        su_departure[chan] = kNever;
                    }
                    pu_departure[chan] = now + rand_exp(rng, q.mu_p);
                }
                break;
            }
            case 2: {  // primary departure frees the channel
                pu_held[chan] = 0;
                pu_departure[chan] = kNever;
                dispatch(chan);
                break;
            }
            case 3: {  // secondary departure
                su_busy[chan] = 0;
                su_departure[chan] = kNever;
                --in_system;
                dispatch(chan);
                break;
            }
        }
    }

    res.sim_time = now;
    if (now > 0.0) {
        double idle = 0.0;
        for (int c = 0; c < n; ++c) idle += pu_idle_time[c] / now;
        res.pu_idle_fraction = idle / n;
        for (double& f : res.su_state_fraction) f /= now;
    } else {
        res.pu_idle_fraction = 1.0;
        res.su_state_fraction.assign(k + 1, 0.0);
        res.su_state_fraction[0] = 1.0;
    }
    return res;
}

}  // namespace crn
