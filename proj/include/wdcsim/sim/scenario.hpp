/*
 * Copyright 2026 The wdcsim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <string>

#include "wdcsim/orchestrator/matching.hpp"

namespace wdcsim::sim {

/// Full description of one simulation run. Every field has a working
/// default; parsing is strict (unknown sections or keys are errors, so a
/// typo can never silently fall back to a default).
struct Scenario {
    std::uint64_t seed = 42;
    std::int64_t duration_ns = 2'000'000'000;
    double frame_bits = 12000;

    struct Racks {
        int count = 8;
        double pitch_m = 1.2;
        int radios = 2;
    } racks;

    struct Channel {
        double carrier_hz = 300e9;
        double bandwidth_hz = 20e9;
        double tx_power_dbm = 20.0;
        double tx_gain_dbi = 20.0;
        double rx_gain_dbi = 20.0;
        double noise_figure_db = 10.0;
        double p_los = 0.52;
        double nlos_loss_db = 15.0;
        double max_range_m = 100.0;
        double shadow_sigma_db = 0.0;
        std::string pathloss = "free-space";  // free-space | close-in
        double pl0_db = 0.0;                  // close-in only; 0 = Friis at d0
        double exponent_n = 2.0;
    } channel;

    struct Thz {
        double static_power_w = 0.06;
        double pa_efficiency = 0.12;
        double bandwidth_hz = 200e9;
        double pa_max_dbm = 40.0;
        double alignment_ns = 5.0;
        double processing_ns = 8.0;
    } thz;

    struct Optical {
        double module_power_w = 12.5;
        double module_rate_bps = 400e9;
        double switch_energy_j_per_bit = 0.28e-9;
        double fiber_index = 1.468;
        double per_switch_ns = 600.0;
        double queue_mean_ns = 400.0;
        double queue_cap_ns = 1000.0;
        double link_rate_bps = 400e9;
        int tiers = 2;
        int racks_per_tor = 4;
        int tors_per_pod = 2;
    } optical;

    struct Copper {
        double base_pj_per_bit = 75.0;
        double equalized_pj_per_bit = 120.0;
        double threshold_bps = 400e9;
        double max_reach_m = 5.0;
    } copper;

    struct Traffic {
        std::string generator = "uniform";  // uniform | hotspot | file
        std::string file;                   // traffic CSV for generator=file
        double demand_bps = 20e9;           // uniform / hotspot background
        int hotspot_pairs = 2;
        double hotspot_demand_bps = 120e9;
        bool shift_per_epoch = false;
    } traffic;

    struct Orchestration {
        std::string objective = "bandwidth";  // bandwidth | latency | balanced
        double bandwidth_weight = 0.5;
        double latency_weight = 0.5;
        std::int64_t epoch_ns = 500'000'000;
        bool predictions = false;
        std::int64_t lookahead_ns = 500;
        std::string mode = "adaptive";  // adaptive | frozen
        double steering_delay_ns = 100.0;
        std::uint64_t matching_node_budget = 200000;
    } orchestration;

    struct Blockage {
        bool enabled = true;
        std::int64_t mean_blocked_ns = 50'000'000;
        std::int64_t mean_clear_ns = 5'000'000'000;
        double min_nlos_rate_bps = 1e9;
    } blockage;

    /// Strict parse; throws std::invalid_argument naming the offending
    /// section.key (or line) on any problem.
    static Scenario parse(const std::string& text);

    /// Canonical serialization: fixed key order, shortest round-trip
    /// floats. parse(canonical_text()) reproduces the scenario.
    std::string canonical_text() const;

    /// Hash of the normalized config (which includes the seed).
    std::string digest() const;

    orchestrator::Objective objective() const;
    void validate() const;
};

}  // namespace wdcsim::sim
