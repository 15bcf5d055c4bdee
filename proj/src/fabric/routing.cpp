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

#include "wdcsim/fabric/routing.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "wdcsim/util/errors.hpp"

namespace wdcsim::fabric {

namespace {

using costmodels::LatencyBudget;
using costmodels::link_latency;
using costmodels::Medium;
using costmodels::propagation_delay_ns;

/// Directional edge cost. Entering a switch from a lower tier pays that
/// switch's fixed cost once, which makes the per-path switch terms count
/// distinct tiers (up the tree) rather than every switch node touched.
double edge_cost(const Topology& topo, const Link& l, int from, const RoutingParams& params) {
    int to = l.a == from ? l.b : l.a;
    bool upward = topo.tier_level(to) > topo.tier_level(from);
    if (params.metric == RouteMetric::Hops) return upward ? 1.0 : 0.0;
    double cost = propagation_delay_ns(Medium::Optical, l.distance_m, params.latency);
    if (upward) cost += params.latency.per_switch_ns;
    return cost;
}

Path finalize_optical(const Topology& topo, std::vector<int> nodes, const RoutingParams& params) {
    Path p;
    p.nodes = std::move(nodes);
    p.medium = Medium::Optical;
    p.bottleneck_bps = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < p.nodes.size(); ++i) {
        int u = p.nodes[i];
        int v = p.nodes[i + 1];
        int found = -1;
        for (int id : topo.links_at(u)) {
            const Link& l = topo.link(id);
            if (l.medium != Medium::Optical || l.state != LinkState::Active) continue;
            if ((l.a == u && l.b == v) || (l.a == v && l.b == u)) {
                found = id;
                break;
            }
        }
        if (found < 0) throw InvariantViolation("routing: path segment without a live link");
        const Link& l = topo.link(found);
        p.link_ids.push_back(found);
        p.length_m += l.distance_m;
        p.bottleneck_bps = std::min(p.bottleneck_bps, l.rate_bps);
        if (topo.tier_level(v) > topo.tier_level(u)) ++p.switch_count;
    }
    p.budget = link_latency(Medium::Optical, p.length_m, p.bottleneck_bps, params.frame_bits,
                            p.switch_count, params.latency);
    return p;
}

}  // namespace

std::optional<Path> route(const Topology& topology, int src_rack, int dst_rack,
                          const RoutingParams& params) {
    if (!topology.is_rack(src_rack) || !topology.is_rack(dst_rack))
        throw std::invalid_argument("route: endpoints must be racks");
    if (src_rack == dst_rack) {
        Path p;
        p.nodes = {src_rack};
        p.bottleneck_bps = std::numeric_limits<double>::infinity();
        return p;
    }

    // Label-correcting shortest path over the active optical subgraph,
    // tie-broken on the lexicographically smallest node sequence.
    const int n = topology.node_count();
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(static_cast<std::size_t>(n), inf);
    std::vector<std::vector<int>> best_path(static_cast<std::size_t>(n));
    dist[static_cast<std::size_t>(src_rack)] = 0.0;
    best_path[static_cast<std::size_t>(src_rack)] = {src_rack};

    bool changed = true;
    while (changed) {
        changed = false;
        for (int u = 0; u < n; ++u) {
            auto su = static_cast<std::size_t>(u);
            if (dist[su] == inf) continue;
            for (int id : topology.links_at(u)) {
                const Link& l = topology.link(id);
                if (l.medium != Medium::Optical || l.state != LinkState::Active) continue;
                int v = l.a == u ? l.b : l.a;
                auto sv = static_cast<std::size_t>(v);
                double cand = dist[su] + edge_cost(topology, l, u, params);
                std::vector<int> cand_path = best_path[su];
                cand_path.push_back(v);
                if (cand < dist[sv] ||
                    (cand == dist[sv] && cand_path < best_path[sv])) {
                    dist[sv] = cand;
                    best_path[sv] = std::move(cand_path);
                    changed = true;
                }
            }
        }
    }

    std::optional<Path> optical;
    if (dist[static_cast<std::size_t>(dst_rack)] != inf)
        optical = finalize_optical(topology, best_path[static_cast<std::size_t>(dst_rack)], params);

    std::optional<Path> direct;
    if (const Link* l = topology.find_thz_link(src_rack, dst_rack); l && l->usable()) {
        Path p;
        p.nodes = {src_rack, dst_rack};
        p.link_ids = {l->id};
        p.medium = Medium::Thz;
        p.length_m = l->distance_m;
        p.bottleneck_bps = l->rate_bps;
        p.budget = link_latency(Medium::Thz, l->distance_m, l->rate_bps, params.frame_bits, 0,
                                params.latency);
        direct = std::move(p);
    }

    if (!direct) return optical;
    if (!optical) return direct;
    if (params.metric == RouteMetric::Hops)
        return direct->switch_count <= optical->switch_count ? direct : optical;
    return direct->budget.total_ns() <= optical->budget.total_ns() ? direct : optical;
}

TrafficReport apply_traffic(const Topology& topology, const TrafficMatrix& tm,
                            const RoutingParams& params) {
    TrafficReport report;
    std::map<std::pair<int, int>, double> load;  // (link_id, from_node) -> bps

    for (const auto& [pair, demand] : tm.entries()) {
        auto path = route(topology, pair.first, pair.second, params);
        if (!path)
            throw InvariantViolation("apply_traffic: demand " + std::to_string(pair.first) + "->" +
                                     std::to_string(pair.second) + " is unroutable");
        for (std::size_t i = 0; i < path->link_ids.size(); ++i)
            load[{path->link_ids[i], path->nodes[i]}] += demand;
        report.flows.push_back(FlowAssignment{pair.first, pair.second, demand, *path, 1.0});
    }

    std::map<std::pair<int, int>, double> utilization;
    for (const auto& [key, bps] : load) {
        const Link& l = topology.link(key.first);
        double util = l.rate_bps > 0 ? bps / l.rate_bps : std::numeric_limits<double>::infinity();
        utilization[key] = util;
        report.loads.push_back(LinkLoad{key.first, key.second, bps, util, util > 1.0});
        if (util > 1.0) report.any_overload = true;
    }

    for (FlowAssignment& flow : report.flows) {
        double worst = 1.0;
        for (std::size_t i = 0; i < flow.path.link_ids.size(); ++i)
            worst = std::max(worst, utilization[{flow.path.link_ids[i], flow.path.nodes[i]}]);
        flow.served_fraction = 1.0 / worst;
        report.offered_bps += flow.demand_bps;
        report.served_bps += flow.demand_bps * flow.served_fraction;
        report.demand_weighted_latency_ns += flow.demand_bps * flow.path.budget.total_ns();
    }
    return report;
}

}  // namespace wdcsim::fabric
