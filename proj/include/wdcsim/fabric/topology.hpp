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

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wdcsim/channel/blockage.hpp"
#include "wdcsim/channel/linkbudget.hpp"
#include "wdcsim/channel/pathloss.hpp"
#include "wdcsim/costmodels/latency.hpp"
#include "wdcsim/simcore/rng.hpp"

namespace wdcsim::fabric {

using costmodels::Medium;

struct Rack {
    int id;          // node id; racks occupy 0..rack_count-1
    double x_m;
    double y_m;
    int radio_count;
};

enum class SwitchTier { Tor = 1, Aggregation = 2, Core = 3 };

const char* to_string(SwitchTier t);

struct Switch {
    int id;  // node id, following the rack ids
    SwitchTier tier;
};

enum class LinkState { Active, Inactive, Blocked };

const char* to_string(LinkState s);

struct Link {
    int id = -1;
    int a = -1;  // node ids; rack-rack links keep a < b
    int b = -1;
    Medium medium = Medium::Optical;
    double rate_bps = 0;
    LinkState state = LinkState::Active;
    double distance_m = 0;
    // THz-only channel annotations (frozen at overlay build):
    channel::BlockageState blockage;
    double snr_db = 0;
    double los_rate_bps = 0;
    double nlos_rate_bps = 0;

    bool usable() const { return state == LinkState::Active && rate_bps > 0; }
};

/// Racks + switches + links with an adjacency index. Node ids are dense:
/// racks first, then switches. Mutation happens only between event
/// dispatches (single writer); reads may be shared freely.
class Topology {
public:
    int add_rack(double x_m, double y_m, int radio_count);
    int add_switch(SwitchTier tier);
    int add_link(Link link);  // assigns the link id; returns it

    const std::vector<Rack>& racks() const { return racks_; }
    const std::vector<Switch>& switches() const { return switches_; }
    const std::vector<Link>& links() const { return links_; }
    Link& link(int id) { return links_.at(static_cast<std::size_t>(id)); }
    const Link& link(int id) const { return links_.at(static_cast<std::size_t>(id)); }

    int node_count() const { return static_cast<int>(racks_.size() + switches_.size()); }
    bool is_rack(int node) const { return node >= 0 && node < static_cast<int>(racks_.size()); }
    /// Tier of a node for routing purposes; racks are tier 0.
    int tier_level(int node) const;
    std::span<const int> links_at(int node) const;

    /// The unique THz link between two racks, if one exists (any state).
    const Link* find_thz_link(int rack_a, int rack_b) const;
    Link* find_thz_link(int rack_a, int rack_b);

    int active_thz_degree(int rack) const;
    /// Throws InvariantViolation when any rack exceeds its radio budget.
    void check_radio_capacity() const;
    /// True when every rack reaches every other over active optical links.
    bool optical_backbone_connected() const;

    std::string to_json() const;
    static Topology from_json(const std::string& text);

private:
    std::vector<Rack> racks_;
    std::vector<Switch> switches_;
    std::vector<Link> links_;
    std::vector<std::vector<int>> adjacency_;
};

struct FatTreeParams {
    int racks_per_tor = 4;
    int tors_per_pod = 2;
    double rack_tor_m = 2.0;    // fiber segment lengths per tier
    double tor_agg_m = 10.0;
    double agg_core_m = 25.0;
};

/// Static optical fabric over the given racks (ids are reassigned in
/// order): 1 tier = single ToR; 2 tiers = ToRs under one aggregation
/// switch; 3 tiers = pods of ToRs+aggregation under one core. Every rack
/// pair is connected; a pair's path climbs to the tier of its lowest
/// common switch.
Topology build_fat_tree(std::span<const Rack> racks, int tiers, double link_rate_bps,
                        const FatTreeParams& params = {});

/// Convenience: unit-spaced placeholder racks with no radios.
Topology build_fat_tree(int rack_count, int tiers, double link_rate_bps,
                        const FatTreeParams& params = {});

/// Machine-room grid placement, hot/cold-aisle pitch.
std::vector<Rack> grid_layout(int count, double pitch_m, int radios_per_rack);

struct OverlayParams {
    double max_range_m = 100.0;
    double p_los = 0.52;
    double nlos_extra_loss_db = 15.0;
    double tx_power_dbm = 20.0;
    double tx_gain_dbi = 20.0;
    double rx_gain_dbi = 20.0;
    double noise_figure_db = 10.0;
    double bandwidth_hz = 20e9;
    channel::RateCeiling ceiling;
};

/// A prospective rack-to-rack beam: blockage state and shadowing frozen
/// at build time (quasi-static machine room), with the budgeted rate for
/// both sight conditions.
struct CandidateLink {
    int rack_a;
    int rack_b;
    double distance_m;
    channel::BlockageState blockage;
    double shadow_db;
    double snr_db;        // at the frozen sight condition
    double rate_bps;      // achievable at the frozen sight condition
    double los_rate_bps;
    double nlos_rate_bps;
};

/// All rack pairs within range become candidates; per-pair sight drawn
/// from `blockage_stream`, shadowing (if the model carries a sigma) from
/// `shadow_stream`. Pairs are visited in (a, b) order, so draw sequences
/// and results are reproducible.
std::vector<CandidateLink> build_thz_overlay(std::span<const Rack> racks,
                                             const channel::PathLossModel& plm,
                                             const OverlayParams& params,
                                             simcore::RngStream& blockage_stream,
                                             simcore::RngStream* shadow_stream = nullptr);

/// Registers every candidate as an Inactive THz link so plans can flip
/// states without allocating. Returns link ids keyed by candidate index.
std::vector<int> install_candidates(Topology& topology, std::span<const CandidateLink> candidates);

}  // namespace wdcsim::fabric
