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

#include "wdcsim/simcore/rng.hpp"

namespace wdcsim::costmodels {

enum class Medium { Thz, Optical, Copper };

const char* to_string(Medium m);

struct LatencyParams {
    double alignment_ns = 5.0;      // THz beam steering/settling per frame
    double processing_ns = 8.0;     // transceiver + baseband
    double per_switch_ns = 600.0;   // optical: fixed per traversed switch
    double queue_mean_ns = 400.0;   // optical: exponential queuing per switch...
    double queue_cap_ns = 1000.0;   // ...truncated at this cap (finite buffer)
    double fiber_group_index = 1.468;
    double copper_velocity_factor = 0.7;
    double copper_max_reach_m = 5.0;
};

/// Per-link (or per-path) latency decomposition in nanoseconds.
struct LatencyBudget {
    double propagation_ns = 0.0;
    double serialization_ns = 0.0;
    double alignment_ns = 0.0;      // THz only
    double processing_ns = 0.0;
    double per_switch_ns = 0.0;     // optical only, summed over hops
    int hops = 0;

    double total_ns() const {
        return propagation_ns + serialization_ns + alignment_ns + processing_ns + per_switch_ns;
    }
};

/// Medium-dependent propagation delay: air d/c, fiber d*n/c, copper d/(vf*c).
double propagation_delay_ns(Medium medium, double distance_m, const LatencyParams& params = {});

/// frame_bits / rate, in ns. Throws std::invalid_argument for rate <= 0.
double serialization_delay_ns(double frame_bits, double rate_bps);

/// Full link budget for one path. THz requires hops == 0; optical permits
/// hops >= 0 and adds per-switch fixed + queuing terms; copper beyond its
/// reach throws std::domain_error. When `queue_rng` is null the queuing
/// term is omitted (deterministic routing metric); otherwise each hop
/// draws one truncated exponential.
LatencyBudget link_latency(Medium medium, double distance_m, double rate_bps, double frame_bits,
                           int hops, const LatencyParams& params = {},
                           simcore::RngStream* queue_rng = nullptr);

}  // namespace wdcsim::costmodels
