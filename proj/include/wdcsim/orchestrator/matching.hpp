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
#include <functional>
#include <span>
#include <vector>

#include "wdcsim/fabric/topology.hpp"
#include "wdcsim/fabric/traffic.hpp"
#include "wdcsim/simcore/engine.hpp"

namespace wdcsim::orchestrator {

struct Objective {
    enum class Kind { Bandwidth, Latency, Balanced };
    Kind kind = Kind::Bandwidth;
    double bandwidth_weight = 0.5;  // balanced mode only; must sum to 1
    double latency_weight = 0.5;

    void validate() const;
};

const char* to_string(Objective::Kind k);

/// An undirected rack pair with its matching weight.
struct ScoredEdge {
    int a;  // a < b
    int b;
    double weight;
    std::size_t candidate_index;
};

struct MatchingOptions {
    /// Branch-and-bound node cap. The search starts from the greedy
    /// solution, so even a truncated search returns at least the greedy
    /// weight (and thus at least half the optimum). Small instances close
    /// far below the default cap, making the result exactly optimal.
    std::uint64_t node_budget = 200000;
};

struct MatchingResult {
    std::vector<std::size_t> selected;  // indices into the edge span, sorted
    double weight = 0;
    double greedy_weight = 0;
    bool search_completed = false;      // true => weight is the exact optimum
};

/// Maximum-weight degree-constrained subgraph selection (b-matching):
/// at most caps[v] chosen edges touch vertex v. Deterministic: edges are
/// ranked (weight desc, then (a, b) ascending), greedy admits in rank
/// order, and the refinement explores include-first in the same order.
MatchingResult max_weight_b_matching(std::span<const ScoredEdge> edges, std::span<const int> caps,
                                     const MatchingOptions& options = {});

struct PlannedLink {
    int a;
    int b;
    auto operator<=>(const PlannedLink&) const = default;
};

struct ReconfigPlan {
    std::vector<PlannedLink> target;      // full selected set, sorted
    std::vector<PlannedLink> activate;    // target minus currently active
    std::vector<PlannedLink> deactivate;  // currently active minus target
    double steering_delay_ns = 100.0;
    std::uint64_t epoch_id = 0;
    double matched_weight = 0.0;

    bool is_identity() const { return activate.empty() && deactivate.empty(); }
};

struct SelectInputs {
    std::span<const fabric::CandidateLink> candidates;
    const fabric::TrafficMatrix* traffic = nullptr;
    std::span<const int> radio_caps;  // indexed by rack id
    Objective objective;
    /// Per-candidate switched-path latency saved by going direct, in ns;
    /// required for the latency and balanced objectives.
    std::span<const double> latency_saved_ns;
    std::span<const PlannedLink> currently_active;
    double steering_delay_ns = 100.0;
    std::uint64_t epoch_id = 0;
    MatchingOptions options;
};

/// Picks the THz link set for one epoch. Edge weights: bandwidth =
/// min(two-way demand, link rate); latency = two-way demand * switched
/// latency saved; balanced = a normalized blend. Zero-weight candidates
/// are dropped, so an empty traffic matrix yields an empty plan.
ReconfigPlan select_links(const SelectInputs& in);

/// Deactivations take effect immediately; each activation leaves its link
/// Inactive until a scheduled event at now + steering_delay flips it
/// Active (and invokes on_usable). Throws InvariantViolation when the
/// post-plan degree of any rack would exceed its radio count.
std::vector<simcore::EventId> apply_plan(fabric::Topology& topology, const ReconfigPlan& plan,
                                         simcore::SimEngine& engine,
                                         std::function<void(const PlannedLink&)> on_usable = {});

}  // namespace wdcsim::orchestrator
