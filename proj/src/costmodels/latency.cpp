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

#include "wdcsim/costmodels/latency.hpp"

#include <algorithm>
#include <stdexcept>

#include "wdcsim/channel/pathloss.hpp"

namespace wdcsim::costmodels {

const char* to_string(Medium m) {
    switch (m) {
        case Medium::Thz: return "thz";
        case Medium::Optical: return "optical";
        case Medium::Copper: return "copper";
    }
    return "?";
}

double propagation_delay_ns(Medium medium, double distance_m, const LatencyParams& params) {
    if (!(distance_m >= 0)) throw std::invalid_argument("propagation_delay: negative distance");
    const double c = channel::kSpeedOfLightMps;
    switch (medium) {
        case Medium::Thz: return distance_m / c * 1e9;
        case Medium::Optical: return distance_m * params.fiber_group_index / c * 1e9;
        case Medium::Copper: return distance_m / (params.copper_velocity_factor * c) * 1e9;
    }
    return 0.0;
}

double serialization_delay_ns(double frame_bits, double rate_bps) {
    if (!(rate_bps > 0)) throw std::invalid_argument("serialization_delay: rate must be positive");
    if (!(frame_bits >= 0)) throw std::invalid_argument("serialization_delay: negative frame size");
    return frame_bits / rate_bps * 1e9;
}

LatencyBudget link_latency(Medium medium, double distance_m, double rate_bps, double frame_bits,
                           int hops, const LatencyParams& params, simcore::RngStream* queue_rng) {
    if (hops < 0) throw std::invalid_argument("link_latency: negative hop count");
    if (medium != Medium::Optical && hops != 0)
        throw std::invalid_argument("link_latency: switch hops only exist on optical paths");
    if (medium == Medium::Copper && distance_m > params.copper_max_reach_m)
        throw std::domain_error("link_latency: copper link beyond maximum reach");

    LatencyBudget b;
    b.hops = hops;
    b.propagation_ns = propagation_delay_ns(medium, distance_m, params);
    b.serialization_ns = serialization_delay_ns(frame_bits, rate_bps);
    b.processing_ns = params.processing_ns;
    if (medium == Medium::Thz) b.alignment_ns = params.alignment_ns;
    for (int h = 0; h < hops; ++h) {
        double q = 0.0;
        if (queue_rng) q = std::min(queue_rng->exponential(params.queue_mean_ns), params.queue_cap_ns);
        b.per_switch_ns += params.per_switch_ns + q;
    }
    return b;
}

}  // namespace wdcsim::costmodels
