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
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "wdcsim/fabric/topology.hpp"
#include "wdcsim/simcore/engine.hpp"

namespace wdcsim::orchestrator {

/// Mirror of one THz link's live condition.
struct TwinLink {
    double snr_db = 0;
    channel::Sight sight = channel::Sight::Los;
    fabric::LinkState admin = fabric::LinkState::Inactive;
    double utilization = 0;
    double nlos_rate_bps = 0;
    simcore::TimeNs last_update_ns = 0;

    bool operator==(const TwinLink&) const = default;
};

using LinkKey = std::pair<int, int>;  // (rack a, rack b), a < b

struct FabricSnapshot {
    simcore::TimeNs time_ns = 0;
    std::map<LinkKey, TwinLink> links;
};

/// The digital twin: per-link mirror plus bookkeeping for links already
/// drained ahead of a predicted blockage.
struct TwinState {
    std::map<LinkKey, TwinLink> links;
    std::set<LinkKey> drained;
};

/// Builds a snapshot of every THz link, folding in the current
/// per-direction utilizations (keyed like the links, max of directions).
FabricSnapshot snapshot_fabric(const fabric::Topology& topology,
                               const std::map<LinkKey, double>& utilization,
                               simcore::TimeNs now_ns);

/// Field-by-field divergence report; empty means the twin mirrors the
/// fabric exactly.
std::vector<std::string> diff_twin(const TwinState& twin, const FabricSnapshot& snapshot);

enum class TwinActionKind {
    RerouteNlos,      // blocked beam can fall back to its reflected path
    RerouteOptical,   // no usable reflection; demand must take the fabric
    PreemptiveDrain,  // predicted blockage inside the lookahead window
};

const char* to_string(TwinActionKind k);

struct TwinAction {
    TwinActionKind kind;
    LinkKey link;
};

struct TwinConfig {
    bool predictions_enabled = false;
    simcore::TimeNs lookahead_ns = 500;
    double min_nlos_rate_bps = 1e9;  // below this the reflection is unusable
};

/// Reconciles the twin to the snapshot and emits reroute actions for
/// newly blocked links (and, with predictions on, preemptive drains for
/// links whose next scheduled blockage falls inside the lookahead).
/// Throws std::invalid_argument when the two link universes differ.
std::vector<TwinAction> twin_step(TwinState& twin, const FabricSnapshot& snapshot,
                                  const TwinConfig& config,
                                  const std::map<LinkKey, simcore::TimeNs>& next_blockage_on);

}  // namespace wdcsim::orchestrator
