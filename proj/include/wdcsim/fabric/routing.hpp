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
#include <optional>
#include <vector>

#include "wdcsim/costmodels/latency.hpp"
#include "wdcsim/fabric/topology.hpp"
#include "wdcsim/fabric/traffic.hpp"

namespace wdcsim::fabric {

enum class RouteMetric { Latency, Hops };

struct RoutingParams {
    RouteMetric metric = RouteMetric::Latency;
    double frame_bits = 12000.0;
    costmodels::LatencyParams latency;
};

/// A routed src->dst path. The latency budget is deterministic (fixed
/// per-switch cost, no queuing draw) and equals the costmodels budget
/// for the path's aggregate quantities.
struct Path {
    std::vector<int> nodes;     // src ... dst
    std::vector<int> link_ids;  // one per segment
    Medium medium = Medium::Optical;  // Thz only for the direct one-hop link
    int switch_count = 0;       // distinct switch tiers traversed
    double length_m = 0;        // total segment length
    double bottleneck_bps = 0;
    costmodels::LatencyBudget budget;

    bool direct_thz() const { return medium == Medium::Thz; }
};

/// Shortest path under the metric. A direct active THz link is considered
/// only as the single src->dst hop (beams do not relay through third
/// racks); it wins ties against switched paths. Optical ties break on the
/// lexicographically smallest node sequence. Returns nullopt only when
/// the pair is disconnected. src == dst yields the empty path.
std::optional<Path> route(const Topology& topology, int src_rack, int dst_rack,
                          const RoutingParams& params = {});

struct LinkLoad {
    int link_id;
    int from_node;     // direction
    double load_bps;
    double utilization;
    bool overloaded;
};

struct FlowAssignment {
    int src;
    int dst;
    double demand_bps;
    Path path;
    double served_fraction;  // min(1, 1/max-overload along the path)
};

struct TrafficReport {
    std::vector<FlowAssignment> flows;  // in (src, dst) order
    std::vector<LinkLoad> loads;        // in (link_id, from_node) order
    bool any_overload = false;
    double offered_bps = 0;
    double served_bps = 0;
    double demand_weighted_latency_ns = 0;  // sum(demand * latency)

    double served_fraction() const { return offered_bps > 0 ? served_bps / offered_bps : 1.0; }
    double mean_latency_ns() const {
        return offered_bps > 0 ? demand_weighted_latency_ns / offered_bps : 0.0;
    }
};

/// Routes every demand unsplittably, accumulates per-link directional
/// loads, and flags utilization > 1. Oversubscription is reported, not
/// rejected: each flow is throttled by its path's worst overload factor.
/// Throws InvariantViolation if any demand is unroutable.
TrafficReport apply_traffic(const Topology& topology, const TrafficMatrix& tm,
                            const RoutingParams& params = {});

}  // namespace wdcsim::fabric
