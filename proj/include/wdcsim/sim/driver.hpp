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

#include <map>
#include <string>

#include "wdcsim/sim/scenario.hpp"

namespace wdcsim::sim {

/// Everything one deterministic run produces. Logs are returned as byte
/// buffers so callers (CLI, tests) decide where they land on disk.
struct RunOutputs {
    std::string scenario_digest;
    std::uint64_t seed = 0;

    double served_fraction = 0;
    double mean_latency_ns = 0;
    double p50_latency_ns = 0;
    double p99_latency_ns = 0;
    std::uint64_t reconfig_count = 0;  // epochs whose plan changed the link set
    double lost_bits = 0;
    double offered_bits = 0;
    double served_bits = 0;
    std::map<std::string, double> energy_pj_per_bit_by_medium;  // delivered-bit weighted
    std::map<std::string, double> blocked_ns_by_link;
    std::map<std::string, double> lost_bits_by_link;

    std::string event_log_csv;
    std::string reconfig_log_csv;

    /// Canonical metric map (the thing the digest covers).
    std::string metrics_json() const;
    /// Hash over metrics + both logs.
    std::string output_digest() const;
};

/// Runs the scenario end to end: builds the fabric and THz overlay,
/// drives epochs / blockage / twin reactions through the event engine,
/// and integrates the service metrics. Deterministic per scenario digest.
RunOutputs run_scenario(const Scenario& scenario);

}  // namespace wdcsim::sim
