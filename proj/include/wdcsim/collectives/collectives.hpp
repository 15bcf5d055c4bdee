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

#include <string>
#include <vector>

#include "wdcsim/fabric/routing.hpp"
#include "wdcsim/fabric/topology.hpp"
#include "wdcsim/simcore/engine.hpp"
#include "wdcsim/simcore/rng.hpp"

namespace wdcsim::collectives {

struct CollectiveSpec {
    enum class Op { AllreduceRing, BroadcastTree };
    Op op = Op::AllreduceRing;
    int node_count = 2;        // N >= 2
    double message_bits = 0;   // per-node tensor size, M > 0

    void validate() const;
};

const char* to_string(CollectiveSpec::Op op);

/// Classic alpha-beta transfer cost: alpha per step, beta per bit.
struct AlphaBetaCost {
    double alpha_ns = 0;
    double beta_ns_per_bit = 0;

    void validate() const;  // alpha >= 0, beta > 0
};

/// Path latency split into the alpha-beta form: alpha carries everything
/// but serialization (which beta covers per bit).
AlphaBetaCost alpha_beta_for_path(const fabric::Path& path,
                                  const costmodels::LatencyParams& params);

/// 2*(N-1) * (alpha + (M/N)*beta).
double allreduce_ring_time_ns(const CollectiveSpec& spec, const AlphaBetaCost& cost);

/// Dissemination rounds for an N-node broadcast at the given fanout:
/// one round when a single transmission reaches everyone (fanout >= N-1),
/// otherwise the smallest k with fanout^k >= N (a chain for fanout 1).
int broadcast_steps(int node_count, int fanout);

/// broadcast_steps * (alpha + M*beta).
double broadcast_tree_time_ns(const CollectiveSpec& spec, const AlphaBetaCost& cost, int fanout);

struct CollectiveStepTrace {
    int index;
    double start_ns;
    double end_ns;
};

struct CollectiveRun {
    double completion_ns = 0;
    std::vector<CollectiveStepTrace> steps;
};

struct SimulateOptions {
    fabric::RoutingParams routing;
    simcore::RngStream* queue_rng = nullptr;  // per-switch queuing draws, optical paths
    int broadcast_fanout = 2;
};

/// Event-level oracle for the analytic formulas. Each transfer is a flow
/// across its routed path carrying the full latency budget; a step
/// completes when its slowest transfer lands. Ring collectives run the
/// first N racks as the ring; broadcast runs root rack 0. Throws
/// std::invalid_argument when the topology lacks the needed connectivity.
CollectiveRun simulate_collective(const CollectiveSpec& spec, const fabric::Topology& topology,
                                  simcore::SimEngine& engine, const SimulateOptions& options = {});

/// JSON report: {op, N, M_bits, topology, analytic_ns, simulated_ns, steps[]}.
std::string collective_report_json(const CollectiveSpec& spec, const std::string& topology_name,
                                   double analytic_ns, const CollectiveRun& run);

/// Lab topology: N racks on a circle with uniform neighbor spacing and an
/// active THz link between each adjacent pair (LoS, no shadowing).
fabric::Topology build_uniform_thz_ring(int node_count, double neighbor_distance_m,
                                        const channel::PathLossModel& plm,
                                        const fabric::OverlayParams& params);

}  // namespace wdcsim::collectives
