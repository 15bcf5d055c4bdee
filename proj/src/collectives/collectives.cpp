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

#include "wdcsim/collectives/collectives.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "wdcsim/util/text.hpp"

namespace wdcsim::collectives {

void CollectiveSpec::validate() const {
    if (node_count < 2) throw std::invalid_argument("CollectiveSpec: need at least 2 nodes");
    if (!(message_bits > 0)) throw std::invalid_argument("CollectiveSpec: message size must be positive");
}

const char* to_string(CollectiveSpec::Op op) {
    return op == CollectiveSpec::Op::AllreduceRing ? "allreduce-ring" : "broadcast-tree";
}

void AlphaBetaCost::validate() const {
    if (!(alpha_ns >= 0)) throw std::invalid_argument("AlphaBetaCost: alpha must be >= 0");
    if (!(beta_ns_per_bit > 0)) throw std::invalid_argument("AlphaBetaCost: beta must be > 0");
}

AlphaBetaCost alpha_beta_for_path(const fabric::Path& path,
                                  const costmodels::LatencyParams& params) {
    costmodels::LatencyBudget zero_frame =
        costmodels::link_latency(path.medium, path.length_m, path.bottleneck_bps, 0.0,
                                 path.switch_count, params);
    return AlphaBetaCost{zero_frame.total_ns(), 1e9 / path.bottleneck_bps};
}

double allreduce_ring_time_ns(const CollectiveSpec& spec, const AlphaBetaCost& cost) {
    spec.validate();
    cost.validate();
    double n = spec.node_count;
    return 2.0 * (n - 1.0) * (cost.alpha_ns + spec.message_bits / n * cost.beta_ns_per_bit);
}

int broadcast_steps(int node_count, int fanout) {
    if (fanout < 1) throw std::invalid_argument("broadcast_steps: fanout must be >= 1");
    if (fanout >= node_count - 1) return 1;
    if (fanout == 1) return node_count - 1;
    int steps = 0;
    long long reach = 1;
    while (reach < node_count) {
        reach *= fanout;
        ++steps;
    }
    return steps;
}

double broadcast_tree_time_ns(const CollectiveSpec& spec, const AlphaBetaCost& cost, int fanout) {
    spec.validate();
    cost.validate();
    return broadcast_steps(spec.node_count, fanout) *
           (cost.alpha_ns + spec.message_bits * cost.beta_ns_per_bit);
}

namespace {

using fabric::Path;

double transfer_time_ns(const Path& path, double frame_bits, const fabric::RoutingParams& routing,
                        simcore::RngStream* queue_rng) {
    return costmodels::link_latency(path.medium, path.length_m, path.bottleneck_bps, frame_bits,
                                    path.switch_count, routing.latency, queue_rng)
        .total_ns();
}

Path require_route(const fabric::Topology& topo, int src, int dst,
                   const fabric::RoutingParams& routing) {
    auto path = fabric::route(topo, src, dst, routing);
    if (!path || path->link_ids.empty())
        throw std::invalid_argument("simulate_collective: no connectivity between racks " +
                                    std::to_string(src) + " and " + std::to_string(dst));
    return *path;
}

}  // namespace

CollectiveRun simulate_collective(const CollectiveSpec& spec, const fabric::Topology& topology,
                                  simcore::SimEngine& engine, const SimulateOptions& options) {
    spec.validate();
    const int n = spec.node_count;
    if (n > static_cast<int>(topology.racks().size()))
        throw std::invalid_argument("simulate_collective: topology has too few racks");

    CollectiveRun run;
    double now = static_cast<double>(engine.now());

    if (spec.op == CollectiveSpec::Op::AllreduceRing) {
        std::vector<Path> ring;
        for (int i = 0; i < n; ++i)
            ring.push_back(require_route(topology, i, (i + 1) % n, options.routing));
        double chunk = spec.message_bits / n;
        int total_steps = 2 * (n - 1);
        for (int s = 0; s < total_steps; ++s) {
            double step_start = now;
            double step_end = step_start;
            for (int i = 0; i < n; ++i) {
                double t = transfer_time_ns(ring[static_cast<std::size_t>(i)], chunk,
                                            options.routing, options.queue_rng);
                double end = step_start + t;
                step_end = std::max(step_end, end);
                engine.schedule(static_cast<simcore::TimeNs>(std::llround(end)),
                                simcore::EventKind::FlowEnd,
                                "ring step " + std::to_string(s) + " " + std::to_string(i) + "->" +
                                    std::to_string((i + 1) % n));
            }
            engine.schedule(static_cast<simcore::TimeNs>(std::llround(step_end)),
                            simcore::EventKind::CollectiveStep, "step " + std::to_string(s));
            run.steps.push_back(CollectiveStepTrace{s, step_start, step_end});
            now = step_end;
        }
    } else {
        int steps = broadcast_steps(n, options.broadcast_fanout);
        std::vector<int> informed = {0};
        int next = 1;
        for (int s = 0; s < steps; ++s) {
            double step_start = now;
            double step_end = step_start;
            std::vector<int> newly;
            for (int sender : informed) {
                for (int f = 0; f < options.broadcast_fanout && next < n; ++f) {
                    Path path = require_route(topology, sender, next, options.routing);
                    double t = transfer_time_ns(path, spec.message_bits, options.routing,
                                                options.queue_rng);
                    double end = step_start + t;
                    step_end = std::max(step_end, end);
                    engine.schedule(static_cast<simcore::TimeNs>(std::llround(end)),
                                    simcore::EventKind::FlowEnd,
                                    "bcast step " + std::to_string(s) + " " +
                                        std::to_string(sender) + "->" + std::to_string(next));
                    newly.push_back(next);
                    ++next;
                }
                if (next >= n) break;
            }
            engine.schedule(static_cast<simcore::TimeNs>(std::llround(step_end)),
                            simcore::EventKind::CollectiveStep, "step " + std::to_string(s));
            run.steps.push_back(CollectiveStepTrace{s, step_start, step_end});
            informed.insert(informed.end(), newly.begin(), newly.end());
            now = step_end;
        }
    }

    run.completion_ns = now - static_cast<double>(engine.now());
    engine.run_until(static_cast<simcore::TimeNs>(std::llround(now)));
    return run;
}

std::string collective_report_json(const CollectiveSpec& spec, const std::string& topology_name,
                                   double analytic_ns, const CollectiveRun& run) {
    std::ostringstream out;
    out << "{\n"
        << "  \"op\": \"" << to_string(spec.op) << "\",\n"
        << "  \"N\": " << spec.node_count << ",\n"
        << "  \"M_bits\": " << util::format_double(spec.message_bits) << ",\n"
        << "  \"topology\": \"" << topology_name << "\",\n"
        << "  \"analytic_ns\": " << util::format_double(analytic_ns) << ",\n"
        << "  \"simulated_ns\": " << util::format_double(run.completion_ns) << ",\n"
        << "  \"ratio\": "
        << util::format_double(analytic_ns > 0 ? run.completion_ns / analytic_ns : 0.0) << ",\n"
        << "  \"steps\": [";
    for (std::size_t i = 0; i < run.steps.size(); ++i) {
        if (i) out << ",";
        out << "\n    {\"index\": " << run.steps[i].index << ", \"start_ns\": "
            << util::format_double(run.steps[i].start_ns)
            << ", \"end_ns\": " << util::format_double(run.steps[i].end_ns) << "}";
    }
    out << "\n  ]\n}";
    return out.str();
}

fabric::Topology build_uniform_thz_ring(int node_count, double neighbor_distance_m,
                                        const channel::PathLossModel& plm,
                                        const fabric::OverlayParams& params) {
    if (node_count < 2) throw std::invalid_argument("build_uniform_thz_ring: need >= 2 nodes");
    if (!(neighbor_distance_m > 0))
        throw std::invalid_argument("build_uniform_thz_ring: spacing must be positive");

    fabric::Topology topo;
    double radius = node_count == 2 ? neighbor_distance_m / 2.0
                                    : neighbor_distance_m /
                                          (2.0 * std::sin(std::numbers::pi / node_count));
    for (int i = 0; i < node_count; ++i) {
        double angle = 2.0 * std::numbers::pi * i / node_count;
        topo.add_rack(radius * std::cos(angle), radius * std::sin(angle), 2);
    }

    channel::LinkBudget budget;
    budget.tx_power_dbm = params.tx_power_dbm;
    budget.tx_gain_dbi = params.tx_gain_dbi;
    budget.rx_gain_dbi = params.rx_gain_dbi;
    budget.noise_figure_db = params.noise_figure_db;
    budget.bandwidth_hz = params.bandwidth_hz;
    budget.path_loss_db =
        channel::path_loss_db(plm, std::max(neighbor_distance_m, plm.d0_m));
    double rate = channel::achievable_rate_bps(budget, params.ceiling);

    for (int i = 0; i < node_count; ++i) {
        if (node_count == 2 && i == 1) break;  // the wrap link is the same pair
        int j = (i + 1) % node_count;
        fabric::Link l;
        l.a = std::min(i, j);
        l.b = std::max(i, j);
        l.medium = fabric::Medium::Thz;
        l.rate_bps = rate;
        l.state = fabric::LinkState::Active;
        l.distance_m = neighbor_distance_m;
        l.blockage = channel::BlockageState{channel::Sight::Los, 0.0};
        l.snr_db = budget.snr_db();
        l.los_rate_bps = rate;
        l.nlos_rate_bps = rate;
        topo.add_link(l);
    }
    return topo;
}

}  // namespace wdcsim::collectives
