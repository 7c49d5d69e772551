#pragma once

// Batch experiment runner: wires topology generation, shortcut planning,
// channel assignment, the capacity model and the dissemination simulator into
// seed-averaged parameter sweeps, and writes deterministic CSV summaries,
// per-run records, plot scripts and a run manifest.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "crn/assignment.hpp"
#include "crn/capacity.hpp"
#include "crn/shortcuts.hpp"

namespace crn {

enum class Scenario {
    LatencyVsShortcuts,
    AplVsShortcuts,
    CapacityVsSensing,
    CapacityVsShortcuts,
    CapacityVsAvailability,
};

const char* scenario_name(Scenario s);
Scenario parse_scenario(const std::string& name);  // ConfigError on unknown names

// Composite evaluation schemes: how shortcuts are planned x how radios are
// assigned. WithoutSW plans no shortcuts at all.
enum class Scheme { WithoutSW, RsRandom, NscRandom, NscCa, Wide };

const char* scheme_name(Scheme s);
Scheme parse_scheme(const std::string& name);  // ConfigError on unknown names

// The two halves a scheme is composed of.
ShortcutMethod scheme_plan_method(Scheme s);
AssignMode scheme_assign_mode(Scheme s);

struct ExperimentConfig {
    // [network]
    int sus = 100;
    int pus = 12;
    int channels = 12;
    int radios = 4;
    double area_w = 1000.0;
    double area_h = 1000.0;
    double su_range = 50.0;
    double pu_range = 100.0;
    double degree_target = 4.0;
    double degree_tolerance = 0.1;
    double availability = 0.8;

    // [traffic]
    double lambda_p = 0.2;
    double lambda_s = 0.5;
    std::uint64_t packet_bytes = 512;
    double data_rate = 2e6;

    // [sensing]
    double tau_ms = 10.0;
    double slot_ms = 100.0;
    double p_f = 0.2;
    double p_d = 0.9;
    double p_h0 = 0.5;

    // [capacity] — reference constants for the closed-form capacity columns
    double t0 = 2e6;
    double k_ref = 4.0;
    double cg_ref = 0.4;
    double pavg_ref = 0.5;
    FactorPolicy factor_policy = FactorPolicy::MinRadiosChannels;

    // [smallworld]
    double alpha_deg = 30.0;
    int budget_sensing = 10;       // shortcut budget for the sensing-time sweep
    int budget_availability = 30;  // shortcut budget for the availability sweep

    // [experiment]
    Scenario scenario = Scenario::AplVsShortcuts;
    std::vector<Scheme> schemes;  // defaulted per scenario when empty
    std::vector<double> sweep;    // budgets, tau in ms, or availability values
    int seeds = 20;
    std::uint64_t seed_offset = 1;
    int max_slots = 4000;

    void validate() const;  // ConfigError on any violated invariant
};

// UTF-8 "key = value" text with [section] headers; see README for the schema.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);

// Fixed-order serialization of every field; feeds the manifest hash.
std::string canonical_config(const ExperimentConfig& cfg);
std::uint64_t fnv1a_hash(std::string_view text);

// One aggregated table cell: (sweep value, scheme) averaged over seeds.
// Fields not used by a scenario stay zero.
struct SummaryCell {
    double sweep = 0.0;
    Scheme scheme = Scheme::WithoutSW;
    int n = 0;          // seeds aggregated
    int n_latency = 0;  // runs whose latency was defined (full coverage)

    double mean_latency = 0.0, sd_latency = 0.0;
    double mean_lat_ratio = 0.0;  // latency vs the same scheme at budget 0
    double mean_covered = 0.0;

    double mean_l = 0.0, sd_l = 0.0;
    double mean_l_ratio = 0.0;  // path length vs budget 0
    double mean_created = 0.0, mean_feasible = 0.0;

    double mean_k = 0.0, mean_cg = 0.0, mean_pavg = 0.0;
    double f_ref = 0.0, mean_f_meas = 0.0;
    double mean_capa_ref = 0.0, sd_capa_ref = 0.0;
    double mean_capae_ref = 0.0, sd_capae_ref = 0.0;
    double mean_capa_meas = 0.0, mean_capae_meas = 0.0;
};

struct ExperimentResult {
    Scenario scenario = Scenario::AplVsShortcuts;
    std::vector<SummaryCell> cells;        // ordered (sweep asc, scheme in config order)
    std::string summary_header;           // scenario-specific CSV schema
    std::vector<std::string> summary_rows;
    std::string runs_header;              // per-(sweep, scheme, seed) records
    std::vector<std::string> runs_rows;
};

ExperimentResult run_experiment(const ExperimentConfig& cfg);

// Writes <scenario>.csv, <scenario>_runs.csv, plot_<scenario>.py and
// manifest.txt into out_dir (created if missing). Reruns with an identical
// config produce byte-identical files.
void emit_outputs(const ExperimentConfig& cfg, const ExperimentResult& res,
                  const std::string& out_dir);

}  // namespace crn
