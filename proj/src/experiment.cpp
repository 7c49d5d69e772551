#include "crn/experiment.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <queue>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "crn/dissemination.hpp"
#include "crn/error.hpp"
#include "crn/rng.hpp"
#include "crn/sop.hpp"
#include "crn/topology.hpp"
#include "crn/version.hpp"

namespace crn {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

// Exact round-trip formatting; feeds the canonical serialization so the
// manifest hash changes whenever any parameter changes.
std::string fmt_exact(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

double parse_number(const std::string& value, const std::string& key) {
    const std::string t = trim(value);
    if (t.empty()) throw ConfigError("empty value for '" + key + "'");
    char* end = nullptr;
    const double d = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size() || !std::isfinite(d))
        throw ConfigError("bad number '" + t + "' for '" + key + "'");
    return d;
}

long long parse_integer(const std::string& value, const std::string& key) {
    const double d = parse_number(value, key);
    if (std::floor(d) != d || std::fabs(d) > 9e15)
        throw ConfigError("expected an integer for '" + key + "', got '" + trim(value) + "'");
    return static_cast<long long>(d);
}

std::uint64_t parse_unsigned(const std::string& value, const std::string& key) {
    const long long i = parse_integer(value, key);
    if (i < 0) throw ConfigError("expected a non-negative integer for '" + key + "'");
    return static_cast<std::uint64_t>(i);
}

std::vector<std::string> split_list(const std::string& value) {
    std::string s = value;
    std::replace(s.begin(), s.end(), ',', ' ');
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

// Streaming mean/variance (Welford); sample standard deviation.
struct Agg {
    long long n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++n;
        const double d = x - mean;
        mean += d / static_cast<double>(n);
        m2 += d * (x - mean);
    }
    double avg() const { return n > 0 ? mean : 0.0; }
    double sd() const { return n > 1 ? std::sqrt(m2 / static_cast<double>(n - 1)) : 0.0; }
};

struct CellAccum {
    int n = 0;
    int n_latency = 0;
    Agg lat, lat_ratio, covered, l, l_ratio, created, feasible;
    Agg k, cg, pavg, f_meas, capa_ref, capae_ref, capa_meas, capae_meas;
    double f_ref = 0.0;
};

// Mean pairwise reachability: for every channel, ordered node pairs connected
// within the subgraph induced by the channel's holders, weighted by the
// channel's availability component and averaged over channels and all ordered
// pairs.
double measured_mean_connectivity(const Topology& t, std::span<const double> p_link) {
    const int m = t.m_su;
    if (m < 2) return 0.0;
    double total = 0.0;
    std::vector<int> holds(static_cast<std::size_t>(m), -1);
    std::vector<int> visited(static_cast<std::size_t>(m), -1);
    std::vector<int> stack;
    for (int c = 0; c < t.n_channels; ++c) {
        for (int i = 0; i < m; ++i) {
            const auto& ch = t.nodes[i].channels;
            if (std::binary_search(ch.begin(), ch.end(), c)) holds[i] = c;
        }
        double pairs = 0.0;
        for (int s = 0; s < m; ++s) {
            if (holds[s] != c || visited[s] == c) continue;
            double size = 0.0;
            stack.push_back(s);
            visited[s] = c;
            while (!stack.empty()) {
                const int u = stack.back();
                stack.pop_back();
                size += 1.0;
                for (int v : t.su_adj[u]) {
                    if (holds[v] == c && visited[v] != c) {
                        visited[v] = c;
                        stack.push_back(v);
                    }
                }
            }
            pairs += size * (size - 1.0);
        }
        total += p_link[static_cast<std::size_t>(c)] * pairs;
    }
    return total / (static_cast<double>(t.n_channels) * m * (m - 1.0));
}

// Everything derived from one topology seed that the schemes share: the
// network itself, per-channel queue models, link availabilities, slot busy
// probabilities, channel timings, the pairwise connectivity matrix and the
// measured graph statistics.
struct SeedContext {
    Topology t;
    std::vector<QueueParams> qs;
    std::vector<double> p_link;
    std::vector<double> busy;
    std::vector<ChannelTiming> timings;
    ConnectivityMatrix conn;
    double k_meas = 0.0;
    double c_meas = 0.0;
    double pavg_meas = 0.0;
    double mean_avai = 0.0;
    double l_base = 0.0;
    int dest = 0;
};

SeedContext make_seed_context(const ExperimentConfig& cfg, std::uint64_t seed_value,
                              double availability) {
    TopologyParams tp;
    tp.m_su = cfg.sus;
    tp.n_pu = cfg.pus;
    tp.area_w = cfg.area_w;
    tp.area_h = cfg.area_h;
    tp.pu_range = cfg.pu_range;
    tp.su_range = cfg.su_range;
    tp.radios = cfg.radios;
    tp.n_channels = cfg.channels;
    tp.channel_availability = availability;
    tp.degree_target = cfg.degree_target;
    tp.degree_tolerance = cfg.degree_tolerance;
    tp.require_connected = true;

    SeedContext sc;
    sc.t = generate_topology(tp, seed_value);

    // Service rates are drawn once per seed from a dedicated stream, with
    // rejection keeping every queue strictly stable, so that availability
    // sweeps reuse identical traffic conditions.
    std::mt19937_64 rates(mix_seed(seed_value, 0x9e37));
    const int n = cfg.channels;
    double mu_s = 0.0;
    do {
        mu_s = rand_u01(rates);
    } while (mu_s < 1e-6 || mu_s * static_cast<double>(n) <= cfg.lambda_s * (1.0 + 1e-9));
    sc.qs.resize(static_cast<std::size_t>(n));
    for (int c = 0; c < n; ++c) {
        double mu_p = 0.0;
        do {
            mu_p = rand_u01(rates);
        } while (mu_p < 1e-6 || mu_p <= cfg.lambda_p * (1.0 + 1e-9));
        QueueParams q;
        q.lambda_p = cfg.lambda_p;
        q.mu_p = mu_p;
        q.lambda_s = cfg.lambda_s;
        q.mu_s = mu_s;
        q.n_servers = n;
        q.k_capacity = 2 * n;
        sc.qs[static_cast<std::size_t>(c)] = q;
    }

    const int h = typical_su_occupancy(sc.qs[0]);
    sc.p_link.resize(static_cast<std::size_t>(n));
    sc.busy.resize(static_cast<std::size_t>(n));
    sc.timings.resize(static_cast<std::size_t>(n));
    for (int c = 0; c < n; ++c) {
        const auto& q = sc.qs[static_cast<std::size_t>(c)];
        sc.p_link[static_cast<std::size_t>(c)] = link_channel_avail_prob(q, h, n);
        sc.busy[static_cast<std::size_t>(c)] = 1.0 - pu_idle_prob(q);
        sc.timings[static_cast<std::size_t>(c)] =
            estimate_timing(q, cfg.packet_bytes * 8, cfg.data_rate, c);
    }

    sc.conn = ConnectivityMatrix(cfg.sus);
    std::vector<double> shared;
    for (int i = 0; i < cfg.sus; ++i) {
        const auto& ci = sc.t.nodes[static_cast<std::size_t>(i)].channels;
        for (int j = i + 1; j < cfg.sus; ++j) {
            const auto& cj = sc.t.nodes[static_cast<std::size_t>(j)].channels;
            shared.clear();
            std::size_t a = 0, b = 0;
            while (a < ci.size() && b < cj.size()) {
                if (ci[a] < cj[b]) {
                    ++a;
                } else if (cj[b] < ci[a]) {
                    ++b;
                } else {
                    shared.push_back(sc.p_link[static_cast<std::size_t>(ci[a])]);
                    ++a;
                    ++b;
                }
            }
            const double p = shared.empty() ? 0.0 : link_connectivity(shared);
            sc.conn.at(i, j) = p;
            sc.conn.at(j, i) = p;
        }
    }

    sc.k_meas = mean_degree(sc.t);
    sc.c_meas = clustering_coefficient(sc.t);
    sc.pavg_meas = measured_mean_connectivity(sc.t, sc.p_link);
    double avai_total = 0.0;
    for (int i = 0; i < cfg.sus; ++i)
        avai_total += static_cast<double>(sc.t.nodes[static_cast<std::size_t>(i)].channels.size());
    sc.mean_avai = avai_total / static_cast<double>(cfg.sus);
    sc.dest = default_destination(sc.t);
    const PathLengthResult base = average_path_length(sc.t);
    if (!base.value) throw ParameterError("path length undefined on a connected network");
    sc.l_base = *base.value;
    return sc;
}

struct ContextCache {
    const ExperimentConfig& cfg;
    std::map<std::pair<std::uint64_t, long long>, SeedContext> by_key;

    const SeedContext& get(std::uint64_t seed_value, double availability) {
        const auto key = std::make_pair(seed_value, std::llround(availability * 1e9));
        auto it = by_key.find(key);
        if (it == by_key.end())
            it = by_key.emplace(key, make_seed_context(cfg, seed_value, availability)).first;
        return it->second;
    }
};

ShortcutPlan plan_for(const ExperimentConfig& cfg, const SeedContext& sc, Scheme scheme,
                      int budget, std::uint64_t seed_value) {
    GeometryParams g;
    g.alpha_deg = cfg.alpha_deg;
    switch (scheme) {
        case Scheme::WithoutSW:
            return ShortcutPlan{};
        case Scheme::RsRandom:
            return build_plan_rs(sc.t, budget, seed_value);
        case Scheme::NscRandom:
        case Scheme::NscCa:
            return build_plan_nsc(sc.t, g, sc.conn, budget, seed_value);
        case Scheme::Wide:
            return build_plan_wide(sc.t, g, budget, seed_value);
    }
    throw ConfigError("unhandled scheme");
}

// Shortcut links whose endpoints ended up sharing an assigned channel; only
// these shorten paths.
std::vector<std::pair<int, int>> usable_shortcuts(const ShortcutPlan& plan, const Assignment& a) {
    std::vector<std::pair<int, int>> out;
    for (const auto& [u, v] : plan.shortcuts)
        if (a.link_usable(u, v)) out.emplace_back(u, v);
    return out;
}

// Probability that the creation exchange between u and v actually came
// through. The narrow-region search proposes over a common channel the hub
// verified before proposing, and the handshake's ack is the proof of
// delivery, so those links always come up; whether they carry data is then
// the assignment's decision. The half-plane search ranks candidates with no
// channel knowledge and needs an extra search round for its larger region,
// so its agreement rides the search overlay and the dedicated radios still
// have to find each other afterwards: one rendezvous per round, each with the
// pair's own connectivity. A randomly paired logical link has no dedicated
// radio at all: it is relayed hop by hop along a shortest existing route, and
// every relay hop has to come through.
double creation_success_prob(const SeedContext& sc, ShortcutMethod method, int u, int v) {
    if (method != ShortcutMethod::Rs) {
        if (method != ShortcutMethod::Wide) return 1.0;
        const double p = sc.conn.at(u, v);
        return p * p;
    }
    const std::size_t m = sc.t.nodes.size();
    std::vector<int> parent(m, -2);
    std::queue<int> frontier;
    frontier.push(u);
    parent[static_cast<std::size_t>(u)] = -1;
    while (!frontier.empty()) {
        const int x = frontier.front();
        frontier.pop();
        if (x == v) break;
        for (int y : sc.t.su_adj[static_cast<std::size_t>(x)])
            if (parent[static_cast<std::size_t>(y)] == -2) {
                parent[static_cast<std::size_t>(y)] = x;
                frontier.push(y);
            }
    }
    if (parent[static_cast<std::size_t>(v)] == -2) return 0.0;
    double p = 1.0;
    for (int x = v; parent[static_cast<std::size_t>(x)] != -1;
         x = parent[static_cast<std::size_t>(x)])
        p *= sc.conn.at(parent[static_cast<std::size_t>(x)], x);
    return p;
}

// Shortcuts that materialize in the data-carrying graph: the creation
// exchange must have come through (one deterministic draw per seed and node
// pair, shared across scenarios, assignment modes and budgets so larger
// budgets keep every link a smaller budget established), and a directly
// created link additionally needs an assigned channel shared by its
// endpoints — that is where a verified-at-creation link can still fail.
// Relayed links forward over their route's own hops, so no endpoint
// assignment condition applies to them.
//
// Two measurement horizons share the one draw per pair. A dissemination run
// happens right after creation, when every delivered link is up, and the run
// itself charges channel downtime slot by slot — so it keeps every created
// link. A capacity figure is a steady-state average over a static graph, so a
// dedicated-radio link additionally counts only if it is up at a random
// instant, which is exactly what the pair's connectivity measures. Relayed
// links ride permanent physical edges and pay their whole toll at delivery.
// The instant-up set is nested inside the created set by construction.
std::vector<std::pair<int, int>> established_shortcuts(const SeedContext& sc,
                                                       const ShortcutPlan& plan,
                                                       const Assignment& a,
                                                       std::uint64_t seed_value,
                                                       bool steady_state) {
    std::vector<std::pair<int, int>> out;
    const std::uint64_t m = static_cast<std::uint64_t>(sc.t.nodes.size());
    for (const auto& [u, v] : plan.shortcuts) {
        double p = creation_success_prob(sc, plan.method, u, v);
        if (steady_state && plan.method != ShortcutMethod::Rs) p *= sc.conn.at(u, v);
        std::mt19937_64 er(mix_seed(seed_value, 0xe57aULL + static_cast<std::uint64_t>(u) * m +
                                                    static_cast<std::uint64_t>(v)));
        if (rand_u01(er) >= p) continue;
        if (plan.method != ShortcutMethod::Rs && !a.link_usable(u, v)) continue;
        out.emplace_back(u, v);
    }
    return out;
}

double path_len(const Topology& t, std::span<const std::pair<int, int>> extra) {
    const PathLengthResult r = average_path_length(t, extra);
    if (!r.value) throw ParameterError("path length undefined on a connected network");
    return *r.value;
}

std::string scheme_columns(Scheme s) {
    return std::string(scheme_name(s)) + "," + method_name(scheme_plan_method(s)) + "," +
           assign_mode_name(scheme_assign_mode(s));
}

void run_latency(const ExperimentConfig& cfg, ContextCache& ctxs, ExperimentResult& res) {
    res.summary_header =
        "scenario,shortcuts,scheme,plan,assign,seeds,covered_runs,mean_latency,sd_latency,"
        "mean_latency_ratio,mean_covered,mean_created";
    res.runs_header = sim_csv_header();
    const std::size_t nw = cfg.sweep.size(), ns = cfg.schemes.size();
    std::vector<CellAccum> cells(nw * ns);

    for (std::size_t si = 0; si < ns; ++si) {
        const Scheme scheme = cfg.schemes[si];
        const AssignMode mode = scheme_assign_mode(scheme);
        for (int s = 0; s < cfg.seeds; ++s) {
            const std::uint64_t seed_value = cfg.seed_offset + static_cast<std::uint64_t>(s);
            const SeedContext& sc = ctxs.get(seed_value, cfg.availability);
            SimConfig simc;
            simc.source = sc.dest;
            simc.slot_length = cfg.slot_ms / 1000.0;
            simc.max_slots = cfg.max_slots;
            simc.pu_busy_prob_per_channel = sc.busy;
            // One sim stream per seed, shared by every scheme and budget, so
            // per-seed comparisons see common slot randomness.
            simc.seed = mix_seed(seed_value, 0x510);

            const ShortcutPlan base_plan = plan_for(cfg, sc, scheme, 0, seed_value);
            const Assignment base_a = assign_all(sc.t, base_plan, sc.timings, mode, seed_value);
            const SimResult base = run_dissemination(sc.t, base_plan, base_a, simc);

            for (std::size_t wi = 0; wi < nw; ++wi) {
                const int budget = static_cast<int>(std::llround(cfg.sweep[wi]));
                const ShortcutPlan plan =
                    budget == 0 ? base_plan : plan_for(cfg, sc, scheme, budget, seed_value);
                const Assignment a =
                    budget == 0 ? base_a : assign_all(sc.t, plan, sc.timings, mode, seed_value);
                // The flood runs over the links whose creation exchange came
                // through, not over every proposal the protocol made.
                ShortcutPlan live = plan;
                if (budget != 0)
                    live.shortcuts =
                        established_shortcuts(sc, plan, a, seed_value, /*steady_state=*/false);
                const SimResult r = budget == 0 ? base : run_dissemination(sc.t, live, a, simc);


                CellAccum& cell = cells[wi * ns + si];
                ++cell.n;
                cell.covered.add(r.covered_fraction);
                cell.created.add(static_cast<double>(plan.shortcuts.size()));
                if (r.latency_slots) {
                    ++cell.n_latency;
                    cell.lat.add(static_cast<double>(*r.latency_slots));
                }
                if (const auto ratio = latency_ratio(r, base)) cell.lat_ratio.add(*ratio);

                const std::string tag = std::string(scenario_name(cfg.scenario)) + "/" +
                                        scheme_name(scheme) + "/" + fmt(cfg.sweep[wi]);
                res.runs_rows.push_back(
                    sim_csv_row(tag, seed_value, static_cast<int>(plan.shortcuts.size()), r));
            }
        }
    }

    for (std::size_t wi = 0; wi < nw; ++wi) {
        for (std::size_t si = 0; si < ns; ++si) {
            const CellAccum& c = cells[wi * ns + si];
            SummaryCell out;
            out.sweep = cfg.sweep[wi];
            out.scheme = cfg.schemes[si];
            out.n = c.n;
            out.n_latency = c.n_latency;
            out.mean_latency = c.lat.avg();
            out.sd_latency = c.lat.sd();
            out.mean_lat_ratio = c.lat_ratio.avg();
            out.mean_covered = c.covered.avg();
            out.mean_created = c.created.avg();
            res.cells.push_back(out);
            res.summary_rows.push_back(std::string(scenario_name(cfg.scenario)) + "," +
                                       fmt(out.sweep) + "," + scheme_columns(out.scheme) + "," +
                                       std::to_string(out.n) + "," + std::to_string(out.n_latency) +
                                       "," + fmt(out.mean_latency) + "," + fmt(out.sd_latency) +
                                       "," + fmt(out.mean_lat_ratio) + "," +
                                       fmt(out.mean_covered) + "," + fmt(out.mean_created));
        }
    }
}

void run_apl(const ExperimentConfig& cfg, ContextCache& ctxs, ExperimentResult& res) {
    res.summary_header =
        "scenario,shortcuts,scheme,plan,assign,seeds,mean_path_length,sd_path_length,"
        "mean_path_ratio,mean_created,mean_feasible";
    res.runs_header = "shortcuts,scheme,seed,created,feasible,path_length,path_ratio";
    const std::size_t nw = cfg.sweep.size(), ns = cfg.schemes.size();
    std::vector<CellAccum> cells(nw * ns);

    for (std::size_t si = 0; si < ns; ++si) {
        const Scheme scheme = cfg.schemes[si];
        const AssignMode mode = scheme_assign_mode(scheme);
        for (int s = 0; s < cfg.seeds; ++s) {
            const std::uint64_t seed_value = cfg.seed_offset + static_cast<std::uint64_t>(s);
            const SeedContext& sc = ctxs.get(seed_value, cfg.availability);
            for (std::size_t wi = 0; wi < nw; ++wi) {
                const int budget = static_cast<int>(std::llround(cfg.sweep[wi]));
                const ShortcutPlan plan = plan_for(cfg, sc, scheme, budget, seed_value);
                const Assignment a = assign_all(sc.t, plan, sc.timings, mode, seed_value);
                const auto usable = usable_shortcuts(plan, a);
                const double l = path_len(sc.t, usable);

                CellAccum& cell = cells[wi * ns + si];
                ++cell.n;
                cell.l.add(l);
                cell.l_ratio.add(l / sc.l_base);
                cell.created.add(static_cast<double>(plan.shortcuts.size()));
                cell.feasible.add(static_cast<double>(usable.size()));
                res.runs_rows.push_back(fmt(cfg.sweep[wi]) + "," + scheme_name(scheme) + "," +
                                        std::to_string(seed_value) + "," +
                                        std::to_string(plan.shortcuts.size()) + "," +
                                        std::to_string(usable.size()) + "," + fmt(l) + "," +
                                        fmt(l / sc.l_base));
            }
        }
    }

    for (std::size_t wi = 0; wi < nw; ++wi) {
        for (std::size_t si = 0; si < ns; ++si) {
            const CellAccum& c = cells[wi * ns + si];
            SummaryCell out;
            out.sweep = cfg.sweep[wi];
            out.scheme = cfg.schemes[si];
            out.n = c.n;
            out.mean_l = c.l.avg();
            out.sd_l = c.l.sd();
            out.mean_l_ratio = c.l_ratio.avg();
            out.mean_created = c.created.avg();
            out.mean_feasible = c.feasible.avg();
            res.cells.push_back(out);
            res.summary_rows.push_back(std::string(scenario_name(cfg.scenario)) + "," +
                                       fmt(out.sweep) + "," + scheme_columns(out.scheme) + "," +
                                       std::to_string(out.n) + "," + fmt(out.mean_l) + "," +
                                       fmt(out.sd_l) + "," + fmt(out.mean_l_ratio) + "," +
                                       fmt(out.mean_created) + "," + fmt(out.mean_feasible));
        }
    }
}

enum class SweepKind { Budget, Sensing, Availability };

void run_capacity(const ExperimentConfig& cfg, ContextCache& ctxs, ExperimentResult& res,
                  SweepKind kind) {
    const char* xname = kind == SweepKind::Sensing ? "tau_ms"
                        : kind == SweepKind::Availability ? "availability"
                                                          : "shortcuts";
    res.summary_header = std::string("scenario,") + xname +
                         ",scheme,plan,assign,seeds,mean_k,mean_cg,mean_lg,mean_pavg,f_ref,"
                         "mean_f_meas,mean_capa_ref,sd_capa_ref,mean_capa_e_ref,sd_capa_e_ref,"
                         "mean_capa_meas,mean_capa_e_meas";
    res.runs_header = std::string(xname) + ",scheme,variant,seed," + capacity_csv_header();

    const double f_ref = mrmc_factor(cfg.sus, cfg.radios, cfg.channels, cfg.data_rate,
                                     cfg.factor_policy);
    const std::size_t nw = cfg.sweep.size(), ns = cfg.schemes.size();
    std::vector<CellAccum> cells(nw * ns);

    for (std::size_t wi = 0; wi < nw; ++wi) {
        const double x = cfg.sweep[wi];
        const double availability = kind == SweepKind::Availability ? x : cfg.availability;
        const double tau_s = (kind == SweepKind::Sensing ? x : cfg.tau_ms) / 1000.0;
        const int budget = kind == SweepKind::Budget ? static_cast<int>(std::llround(x))
                           : kind == SweepKind::Sensing ? cfg.budget_sensing
                                                        : cfg.budget_availability;
        for (std::size_t si = 0; si < ns; ++si) {
            const Scheme scheme = cfg.schemes[si];
            const AssignMode mode = scheme_assign_mode(scheme);
            CellAccum& cell = cells[wi * ns + si];
            cell.f_ref = f_ref;
            for (int s = 0; s < cfg.seeds; ++s) {
                const std::uint64_t seed_value = cfg.seed_offset + static_cast<std::uint64_t>(s);
                const SeedContext& sc = ctxs.get(seed_value, availability);
                const ShortcutPlan plan = plan_for(cfg, sc, scheme, budget, seed_value);
                const Assignment a = assign_all(sc.t, plan, sc.timings, mode, seed_value);
                const auto links =
                    established_shortcuts(sc, plan, a, seed_value, /*steady_state=*/true);
                const double l_g = path_len(sc.t, links);

                CapacityParams cp;
                cp.t0 = cfg.t0;
                cp.tau = tau_s;
                cp.t_slot = cfg.slot_ms / 1000.0;
                cp.p_f = cfg.p_f;
                cp.p_d = cfg.p_d;
                cp.p_h0 = cfg.p_h0;
                cp.m = cfg.sus;

                // Reference column: fixed degree/clustering/connectivity
                // constants, measured path length.
                CapacityParams pref = cp;
                pref.factor_f = f_ref;
                const CapacityReport rep_ref =
                    network_capacity(pref, cfg.k_ref, cfg.cg_ref, l_g, cfg.pavg_ref);

                // Measured column: everything taken from this network. The
                // enhancement factor follows the mean local channel count.
                long long fm = std::llround(sc.mean_avai);
                if (fm > cfg.radios) fm = cfg.radios;
                if (fm < 1) fm = 1;
                CapacityParams pmeas = cp;
                pmeas.factor_f = static_cast<double>(fm);
                CapacityReport rep_meas;
                if (sc.pavg_meas > 0.0 && sc.k_meas >= 1.0) {
                    rep_meas = network_capacity(pmeas, sc.k_meas, sc.c_meas, l_g, sc.pavg_meas);
                } else {
                    // No reachable pair on any channel: report zero capacity
                    // instead of failing the whole sweep.
                    rep_meas.m = cfg.sus;
                    rep_meas.k = sc.k_meas;
                    rep_meas.c_g = sc.c_meas;
                    rep_meas.l_g = l_g;
                    rep_meas.p_avg = sc.pavg_meas;
                    rep_meas.factor_f = pmeas.factor_f;
                    rep_meas.tau = tau_s;
                    rep_meas.t_slot = cp.t_slot;
                    rep_meas.p_f = cfg.p_f;
                    rep_meas.p_d = cfg.p_d;
                    rep_meas.p_h0 = cfg.p_h0;
                }

                ++cell.n;
                cell.k.add(sc.k_meas);
                cell.cg.add(sc.c_meas);
                cell.l.add(l_g);
                cell.pavg.add(sc.pavg_meas);
                cell.f_meas.add(static_cast<double>(fm));
                cell.capa_ref.add(rep_ref.capa);
                cell.capae_ref.add(rep_ref.capa_e);
                cell.capa_meas.add(rep_meas.capa);
                cell.capae_meas.add(rep_meas.capa_e);

                const std::string prefix = fmt(x) + "," + scheme_name(scheme);
                res.runs_rows.push_back(prefix + ",ref," + std::to_string(seed_value) + "," +
                                        capacity_csv_row(rep_ref));
                res.runs_rows.push_back(prefix + ",meas," + std::to_string(seed_value) + "," +
                                        capacity_csv_row(rep_meas));
            }
        }
    }

    for (std::size_t wi = 0; wi < nw; ++wi) {
        for (std::size_t si = 0; si < ns; ++si) {
            const CellAccum& c = cells[wi * ns + si];
            SummaryCell out;
            out.sweep = cfg.sweep[wi];
            out.scheme = cfg.schemes[si];
            out.n = c.n;
            out.mean_k = c.k.avg();
            out.mean_cg = c.cg.avg();
            out.mean_l = c.l.avg();
            out.sd_l = c.l.sd();
            out.mean_pavg = c.pavg.avg();
            out.f_ref = c.f_ref;
            out.mean_f_meas = c.f_meas.avg();
            out.mean_capa_ref = c.capa_ref.avg();
            out.sd_capa_ref = c.capa_ref.sd();
            out.mean_capae_ref = c.capae_ref.avg();
            out.sd_capae_ref = c.capae_ref.sd();
            out.mean_capa_meas = c.capa_meas.avg();
            out.mean_capae_meas = c.capae_meas.avg();
            res.cells.push_back(out);
            res.summary_rows.push_back(
                std::string(scenario_name(cfg.scenario)) + "," + fmt(out.sweep) + "," +
                scheme_columns(out.scheme) + "," + std::to_string(out.n) + "," + fmt(out.mean_k) +
                "," + fmt(out.mean_cg) + "," + fmt(out.mean_l) + "," + fmt(out.mean_pavg) + "," +
                fmt(out.f_ref) + "," + fmt(out.mean_f_meas) + "," + fmt(out.mean_capa_ref) + "," +
                fmt(out.sd_capa_ref) + "," + fmt(out.mean_capae_ref) + "," +
                fmt(out.sd_capae_ref) + "," + fmt(out.mean_capa_meas) + "," +
                fmt(out.mean_capae_meas));
        }
    }
}

void apply_kv(ExperimentConfig& cfg, const std::string& section, const std::string& key,
              const std::string& value, bool& schemes_set, bool& sweep_set) {
    const std::string k = lower(key);
    auto unknown = [&]() -> ConfigError {
        return ConfigError("unknown key '" + k + "' in section [" + section + "]");
    };
    if (section == "network") {
        if (k == "sus") cfg.sus = static_cast<int>(parse_integer(value, k));
        else if (k == "pus") cfg.pus = static_cast<int>(parse_integer(value, k));
        else if (k == "channels") cfg.channels = static_cast<int>(parse_integer(value, k));
        else if (k == "radios") cfg.radios = static_cast<int>(parse_integer(value, k));
        else if (k == "area_w") cfg.area_w = parse_number(value, k);
        else if (k == "area_h") cfg.area_h = parse_number(value, k);
        else if (k == "su_range") cfg.su_range = parse_number(value, k);
        else if (k == "pu_range") cfg.pu_range = parse_number(value, k);
        else if (k == "degree_target") cfg.degree_target = parse_number(value, k);
        else if (k == "degree_tolerance") cfg.degree_tolerance = parse_number(value, k);
        else if (k == "availability") cfg.availability = parse_number(value, k);
        else throw unknown();
    } else if (section == "traffic") {
        if (k == "lambda_p") cfg.lambda_p = parse_number(value, k);
        else if (k == "lambda_s") cfg.lambda_s = parse_number(value, k);
        else if (k == "packet_bytes") cfg.packet_bytes = parse_unsigned(value, k);
        else if (k == "data_rate") cfg.data_rate = parse_number(value, k);
        else throw unknown();
    } else if (section == "sensing") {
        if (k == "tau_ms") cfg.tau_ms = parse_number(value, k);
        else if (k == "slot_ms") cfg.slot_ms = parse_number(value, k);
        else if (k == "p_f") cfg.p_f = parse_number(value, k);
        else if (k == "p_d") cfg.p_d = parse_number(value, k);
        else if (k == "p_h0") cfg.p_h0 = parse_number(value, k);
        else throw unknown();
    } else if (section == "capacity") {
        if (k == "t0") cfg.t0 = parse_number(value, k);
        else if (k == "k_ref") cfg.k_ref = parse_number(value, k);
        else if (k == "cg_ref") cfg.cg_ref = parse_number(value, k);
        else if (k == "pavg_ref") cfg.pavg_ref = parse_number(value, k);
        else if (k == "factor_policy") {
            const std::string v = lower(trim(value));
            if (v == "min") cfg.factor_policy = FactorPolicy::MinRadiosChannels;
            else if (v == "ratio") cfg.factor_policy = FactorPolicy::KyasanurRatio;
            else throw ConfigError("factor_policy must be 'min' or 'ratio', got '" + v + "'");
        } else {
            throw unknown();
        }
    } else if (section == "smallworld") {
        if (k == "alpha_deg") cfg.alpha_deg = parse_number(value, k);
        else if (k == "budget_sensing") cfg.budget_sensing = static_cast<int>(parse_integer(value, k));
        else if (k == "budget_availability")
            cfg.budget_availability = static_cast<int>(parse_integer(value, k));
        else throw unknown();
    } else if (section == "experiment") {
        if (k == "scenario") {
            cfg.scenario = parse_scenario(trim(value));
        } else if (k == "schemes") {
            cfg.schemes.clear();
            for (const auto& tok : split_list(value)) cfg.schemes.push_back(parse_scheme(tok));
            schemes_set = true;
        } else if (k == "sweep") {
            cfg.sweep.clear();
            for (const auto& tok : split_list(value)) cfg.sweep.push_back(parse_number(tok, k));
            sweep_set = true;
        } else if (k == "seeds") {
            cfg.seeds = static_cast<int>(parse_integer(value, k));
        } else if (k == "seed_offset") {
            cfg.seed_offset = parse_unsigned(value, k);
        } else if (k == "max_slots") {
            cfg.max_slots = static_cast<int>(parse_integer(value, k));
        } else {
            throw unknown();
        }
    } else {
        throw ConfigError("unknown section [" + section + "]");
    }
}

void apply_defaults(ExperimentConfig& cfg, bool schemes_set, bool sweep_set) {
    if (!schemes_set) {
        switch (cfg.scenario) {
            case Scenario::LatencyVsShortcuts:
                cfg.schemes = {Scheme::NscCa, Scheme::Wide};
                break;
            case Scenario::AplVsShortcuts:
                cfg.schemes = {Scheme::WithoutSW, Scheme::RsRandom, Scheme::NscRandom,
                               Scheme::NscCa, Scheme::Wide};
                break;
            default:
                cfg.schemes = {Scheme::WithoutSW, Scheme::RsRandom, Scheme::NscRandom,
                               Scheme::NscCa};
                break;
        }
    }
    if (!sweep_set) {
        cfg.sweep.clear();
        switch (cfg.scenario) {
            case Scenario::CapacityVsSensing:
                for (int v = 2; v <= 20; v += 2) cfg.sweep.push_back(v);
                break;
            case Scenario::CapacityVsAvailability:
                cfg.sweep = {0.2, 0.4, 0.6, 0.8, 1.0};
                break;
            default:
                for (int v = 0; v <= 50; v += 5) cfg.sweep.push_back(v);
                break;
        }
    }
}

std::string join_lines(const std::string& header, const std::vector<std::string>& rows) {
    std::string s = header;
    s += '\n';
    for (const auto& r : rows) {
        s += r;
        s += '\n';
    }
    return s;
}

void write_text_file(const std::filesystem::path& p, const std::string& content) {
    std::ofstream ofs(p, std::ios::binary);
    if (!ofs) throw IoError("cannot open '" + p.string() + "' for writing");
    ofs << content;
    ofs.flush();
    if (!ofs) throw IoError("write failed for '" + p.string() + "'");
}

std::string plot_script(Scenario sc) {
    const char* x = "shortcuts";
    const char* xlabel = "shortcuts added";
    const char* y = "mean_capa_e_ref";
    const char* ylabel = "effective capacity (bits/s)";
    switch (sc) {
        case Scenario::LatencyVsShortcuts:
            y = "mean_latency";
            ylabel = "dissemination latency (slots)";
            break;
        case Scenario::AplVsShortcuts:
            y = "mean_path_length";
            ylabel = "average path length (hops)";
            break;
        case Scenario::CapacityVsSensing:
            x = "tau_ms";
            xlabel = "sensing time per slot (ms)";
            break;
        case Scenario::CapacityVsShortcuts:
            break;
        case Scenario::CapacityVsAvailability:
            x = "availability";
            xlabel = "channel availability";
            break;
    }
    const std::string name = scenario_name(sc);
    std::string s;
    s += "#!/usr/bin/env python3\n";
    s += "\"\"\"Plot the " + name + " summary (run from the output directory).\"\"\"\n";
    s += "import csv\n";
    s += "from collections import defaultdict\n";
    s += "\n";
    s += "import matplotlib\n";
    s += "\n";
    s += "matplotlib.use(\"Agg\")\n";
    s += "import matplotlib.pyplot as plt\n";
    s += "\n";
    s += "with open(\"" + name + ".csv\", newline=\"\") as fh:\n";
    s += "    rows = list(csv.DictReader(fh))\n";
    s += "series = defaultdict(list)\n";
    s += "for row in rows:\n";
    s += std::string("    series[row[\"scheme\"]].append((float(row[\"") + x +
         "\"]), float(row[\"" + y + "\"])))\n";
    s += "fig, ax = plt.subplots(figsize=(7.0, 4.5))\n";
    s += "for scheme, pts in sorted(series.items()):\n";
    s += "    pts.sort()\n";
    s += "    ax.plot([p[0] for p in pts], [p[1] for p in pts], marker=\"o\", label=scheme)\n";
    s += std::string("ax.set_xlabel(\"") + xlabel + "\")\n";
    s += std::string("ax.set_ylabel(\"") + ylabel + "\")\n";
    s += "ax.grid(True, alpha=0.3)\n";
    s += "ax.legend()\n";
    s += "fig.tight_layout()\n";
    s += "fig.savefig(\"" + name + ".png\", dpi=150)\n";
    return s;
}

std::string join_schemes(const std::vector<Scheme>& schemes) {
    std::string s;
    for (std::size_t i = 0; i < schemes.size(); ++i) {
        if (i) s += ',';
        s += scheme_name(schemes[i]);
    }
    return s;
}

std::string join_doubles(const std::vector<double>& v, std::string (*f)(double)) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += f(v[i]);
    }
    return s;
}

}  // namespace

const char* scenario_name(Scenario s) {
    switch (s) {
        case Scenario::LatencyVsShortcuts: return "latency_vs_shortcuts";
        case Scenario::AplVsShortcuts: return "apl_vs_shortcuts";
        case Scenario::CapacityVsSensing: return "capacity_vs_sensing";
        case Scenario::CapacityVsShortcuts: return "capacity_vs_shortcuts";
        case Scenario::CapacityVsAvailability: return "capacity_vs_availability";
    }
    return "unknown";
}

Scenario parse_scenario(const std::string& name) {
    const std::string n = lower(trim(name));
    if (n == "latency_vs_shortcuts") return Scenario::LatencyVsShortcuts;
    if (n == "apl_vs_shortcuts") return Scenario::AplVsShortcuts;
    if (n == "capacity_vs_sensing") return Scenario::CapacityVsSensing;
    if (n == "capacity_vs_shortcuts") return Scenario::CapacityVsShortcuts;
    if (n == "capacity_vs_availability") return Scenario::CapacityVsAvailability;
    throw ConfigError("unknown scenario '" + name + "'");
}

const char* scheme_name(Scheme s) {
    switch (s) {
        case Scheme::WithoutSW: return "WithoutSW";
        case Scheme::RsRandom: return "RS+Random";
        case Scheme::NscRandom: return "NSC+Random";
        case Scheme::NscCa: return "NSC+CA";
        case Scheme::Wide: return "WIDE";
    }
    return "unknown";
}

Scheme parse_scheme(const std::string& name) {
    const std::string n = lower(trim(name));
    if (n == "withoutsw") return Scheme::WithoutSW;
    if (n == "rs+random") return Scheme::RsRandom;
    if (n == "nsc+random") return Scheme::NscRandom;
    if (n == "nsc+ca") return Scheme::NscCa;
    if (n == "wide") return Scheme::Wide;
    throw ConfigError("unknown scheme '" + name + "'");
}

ShortcutMethod scheme_plan_method(Scheme s) {
    switch (s) {
        case Scheme::WithoutSW: return ShortcutMethod::None;
        case Scheme::RsRandom: return ShortcutMethod::Rs;
        case Scheme::NscRandom:
        case Scheme::NscCa: return ShortcutMethod::Nsc;
        case Scheme::Wide: return ShortcutMethod::Wide;
    }
    return ShortcutMethod::None;
}

AssignMode scheme_assign_mode(Scheme s) {
    return (s == Scheme::NscCa || s == Scheme::Wide) ? AssignMode::ChannelAware
                                                     : AssignMode::Random;
}

void ExperimentConfig::validate() const {
    auto bad = [](const std::string& msg) { throw ConfigError(msg); };
    if (sus < 2) bad("network.sus must be at least 2");
    if (pus < 0) bad("network.pus must be non-negative");
    if (channels < 1) bad("network.channels must be at least 1");
    if (radios < 1) bad("network.radios must be at least 1");
    if (!(area_w > 0.0) || !(area_h > 0.0)) bad("network area dimensions must be positive");
    if (!(su_range > 0.0)) bad("network.su_range must be positive");
    if (!(pu_range > 0.0)) bad("network.pu_range must be positive");
    if (!(degree_target >= 1.0)) bad("network.degree_target must be at least 1");
    if (degree_tolerance < 0.0) bad("network.degree_tolerance must be non-negative");
    if (!(availability > 0.0) || availability > 1.0)
        bad("network.availability must lie in (0, 1]");
    if (lambda_p < 0.0) bad("traffic.lambda_p must be non-negative");
    if (!(lambda_s > 0.0)) bad("traffic.lambda_s must be positive");
    if (packet_bytes == 0) bad("traffic.packet_bytes must be positive");
    if (!(data_rate > 0.0)) bad("traffic.data_rate must be positive");
    if (!(slot_ms > 0.0)) bad("sensing.slot_ms must be positive");
    if (tau_ms < 0.0 || tau_ms > slot_ms) bad("sensing.tau_ms must lie in [0, slot_ms]");
    const std::pair<double, const char*> probs[] = {
        {p_f, "sensing.p_f"}, {p_d, "sensing.p_d"}, {p_h0, "sensing.p_h0"}};
    for (const auto& [v, name] : probs)
        if (v < 0.0 || v > 1.0) bad(std::string(name) + " must lie in [0, 1]");
    if (!(t0 > 0.0)) bad("capacity.t0 must be positive");
    if (!(k_ref >= 1.0)) bad("capacity.k_ref must be at least 1");
    if (cg_ref < 0.0 || cg_ref > 1.0) bad("capacity.cg_ref must lie in [0, 1]");
    if (!(pavg_ref > 0.0) || pavg_ref > 1.0) bad("capacity.pavg_ref must lie in (0, 1]");
    if (!(alpha_deg > 0.0) || alpha_deg >= 180.0)
        bad("smallworld.alpha_deg must lie in (0, 180)");
    if (budget_sensing < 0) bad("smallworld.budget_sensing must be non-negative");
    if (budget_availability < 0) bad("smallworld.budget_availability must be non-negative");
    if (schemes.empty()) bad("experiment.schemes is empty");
    for (std::size_t i = 0; i < schemes.size(); ++i)
        for (std::size_t j = i + 1; j < schemes.size(); ++j)
            if (schemes[i] == schemes[j])
                bad(std::string("duplicate scheme '") + scheme_name(schemes[i]) + "'");
    if (sweep.empty()) bad("experiment.sweep is empty");
    for (double v : sweep) {
        switch (scenario) {
            case Scenario::LatencyVsShortcuts:
            case Scenario::AplVsShortcuts:
            case Scenario::CapacityVsShortcuts:
                if (v < 0.0 || std::floor(v) != v)
                    bad("shortcut sweep values must be non-negative integers");
                break;
            case Scenario::CapacityVsSensing:
                if (v < 0.0 || v > slot_ms)
                    bad("sensing sweep values must lie in [0, slot_ms] ms");
                break;
            case Scenario::CapacityVsAvailability:
                if (!(v > 0.0) || v > 1.0) bad("availability sweep values must lie in (0, 1]");
                break;
        }
    }
    if (seeds < 1) bad("experiment.seeds must be at least 1");
    if (max_slots < 1) bad("experiment.max_slots must be at least 1");
}

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    bool schemes_set = false, sweep_set = false;
    std::istringstream in(text);
    std::string raw, section;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        const std::string line = trim(raw);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3)
                throw ConfigError("malformed section header at line " + std::to_string(lineno));
            section = lower(trim(line.substr(1, line.size() - 2)));
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected 'key = value' at line " + std::to_string(lineno));
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("empty key at line " + std::to_string(lineno));
        if (section.empty())
            throw ConfigError("key outside any [section] at line " + std::to_string(lineno));
        apply_kv(cfg, section, key, value, schemes_set, sweep_set);
    }
    apply_defaults(cfg, schemes_set, sweep_set);
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream ifs(path, std::ios::binary);
    if (!ifs) throw IoError("cannot read config file '" + path + "'");
    std::ostringstream buf;
    buf << ifs.rdbuf();
    return parse_config_text(buf.str());
}

std::string canonical_config(const ExperimentConfig& cfg) {
    std::string s;
    auto kv = [&s](const char* key, const std::string& v) {
        s += key;
        s += '=';
        s += v;
        s += '\n';
    };
    kv("network.sus", std::to_string(cfg.sus));
    kv("network.pus", std::to_string(cfg.pus));
    kv("network.channels", std::to_string(cfg.channels));
    kv("network.radios", std::to_string(cfg.radios));
    kv("network.area_w", fmt_exact(cfg.area_w));
    kv("network.area_h", fmt_exact(cfg.area_h));
    kv("network.su_range", fmt_exact(cfg.su_range));
    kv("network.pu_range", fmt_exact(cfg.pu_range));
    kv("network.degree_target", fmt_exact(cfg.degree_target));
    kv("network.degree_tolerance", fmt_exact(cfg.degree_tolerance));
    kv("network.availability", fmt_exact(cfg.availability));
    kv("traffic.lambda_p", fmt_exact(cfg.lambda_p));
    kv("traffic.lambda_s", fmt_exact(cfg.lambda_s));
    kv("traffic.packet_bytes", std::to_string(cfg.packet_bytes));
    kv("traffic.data_rate", fmt_exact(cfg.data_rate));
    kv("sensing.tau_ms", fmt_exact(cfg.tau_ms));
    kv("sensing.slot_ms", fmt_exact(cfg.slot_ms));
    kv("sensing.p_f", fmt_exact(cfg.p_f));
    kv("sensing.p_d", fmt_exact(cfg.p_d));
    kv("sensing.p_h0", fmt_exact(cfg.p_h0));
    kv("capacity.t0", fmt_exact(cfg.t0));
    kv("capacity.k_ref", fmt_exact(cfg.k_ref));
    kv("capacity.cg_ref", fmt_exact(cfg.cg_ref));
    kv("capacity.pavg_ref", fmt_exact(cfg.pavg_ref));
    kv("capacity.factor_policy", factor_policy_name(cfg.factor_policy));
    kv("smallworld.alpha_deg", fmt_exact(cfg.alpha_deg));
    kv("smallworld.budget_sensing", std::to_string(cfg.budget_sensing));
    kv("smallworld.budget_availability", std::to_string(cfg.budget_availability));
    kv("experiment.scenario", scenario_name(cfg.scenario));
    kv("experiment.schemes", join_schemes(cfg.schemes));
    kv("experiment.sweep", join_doubles(cfg.sweep, &fmt_exact));
    kv("experiment.seeds", std::to_string(cfg.seeds));
    kv("experiment.seed_offset", std::to_string(cfg.seed_offset));
    kv("experiment.max_slots", std::to_string(cfg.max_slots));
    return s;
}

std::uint64_t fnv1a_hash(std::string_view text) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    return h;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    ExperimentResult res;
    res.scenario = cfg.scenario;
    ContextCache ctxs{cfg, {}};
    switch (cfg.scenario) {
        case Scenario::LatencyVsShortcuts: run_latency(cfg, ctxs, res); break;
        case Scenario::AplVsShortcuts: run_apl(cfg, ctxs, res); break;
        case Scenario::CapacityVsSensing: run_capacity(cfg, ctxs, res, SweepKind::Sensing); break;
        case Scenario::CapacityVsShortcuts: run_capacity(cfg, ctxs, res, SweepKind::Budget); break;
        case Scenario::CapacityVsAvailability:
            run_capacity(cfg, ctxs, res, SweepKind::Availability);
            break;
    }
    return res;
}

void emit_outputs(const ExperimentConfig& cfg, const ExperimentResult& res,
                  const std::string& out_dir) {
    namespace fs = std::filesystem;
    const fs::path dir(out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory '" + out_dir + "': " + ec.message());

    const std::string name = scenario_name(res.scenario);
    write_text_file(dir / (name + ".csv"), join_lines(res.summary_header, res.summary_rows));
    write_text_file(dir / (name + "_runs.csv"), join_lines(res.runs_header, res.runs_rows));
    write_text_file(dir / ("plot_" + name + ".py"), plot_script(res.scenario));

    char hash_buf[32];
    std::snprintf(hash_buf, sizeof hash_buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a_hash(canonical_config(cfg))));
    std::string manifest;
    manifest += std::string("version=") + kVersion + "\n";
    manifest += std::string("config_hash=0x") + hash_buf + "\n";
    manifest += std::string("scenario=") + name + "\n";
    manifest += "schemes=" + join_schemes(cfg.schemes) + "\n";
    manifest += "sweep=" + join_doubles(cfg.sweep, &fmt) + "\n";
    manifest += "seeds=" + std::to_string(cfg.seeds) + "\n";
    manifest += "seed_offset=" + std::to_string(cfg.seed_offset) + "\n";
    manifest += "summary_rows=" + std::to_string(res.summary_rows.size()) + "\n";
    manifest += "runs_rows=" + std::to_string(res.runs_rows.size()) + "\n";
    write_text_file(dir / "manifest.txt", manifest);
}

}  // namespace crn
