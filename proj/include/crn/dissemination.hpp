#pragma once

// Slot-based flooding simulator: starting from a source node, informed nodes
// forward over their assigned radios each slot, one uninformed neighbor per
// radio, and a transmission goes through only when the primary user of that
// channel is idle for the slot. Shortcut links carry traffic exactly like
// physical links once both endpoints share an assigned channel.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "crn/assignment.hpp"
#include "crn/shortcuts.hpp"
#include "crn/topology.hpp"

namespace crn {

struct SimConfig {
    int source = 0;
    double slot_length = 0.1;  // seconds, reporting only — latency is counted in slots
    int max_slots = 1000;
    std::vector<double> pu_busy_prob_per_channel;  // P(primary occupies channel) per slot
    std::uint64_t seed = 0;
};

struct SimResult {
    std::optional<int> latency_slots;  // set iff every node was informed
    double covered_fraction = 0.0;
    std::vector<int> first_arrival;    // slot each node was first informed, -1 if never
};

SimResult run_dissemination(const Topology& t, const ShortcutPlan& plan, const Assignment& a,
                            const SimConfig& cfg);

// Latency(with) / Latency(without); empty when either run failed to cover the
// network or the baseline latency is zero.
std::optional<double> latency_ratio(const SimResult& with_plan, const SimResult& without_plan);

std::string sim_csv_header();
std::string sim_csv_row(const std::string& scenario, std::uint64_t seed, int shortcuts,
                        const SimResult& r);

}  // namespace crn
