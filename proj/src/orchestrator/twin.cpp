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

#include "wdcsim/orchestrator/twin.hpp"

#include <stdexcept>

#include "wdcsim/util/text.hpp"

namespace wdcsim::orchestrator {

const char* to_string(TwinActionKind k) {
    switch (k) {
        case TwinActionKind::RerouteNlos: return "reroute-nlos";
        case TwinActionKind::RerouteOptical: return "reroute-optical";
        case TwinActionKind::PreemptiveDrain: return "preemptive-drain";
    }
    return "?";
}

FabricSnapshot snapshot_fabric(const fabric::Topology& topology,
                               const std::map<LinkKey, double>& utilization,
                               simcore::TimeNs now_ns) {
    FabricSnapshot snap;
    snap.time_ns = now_ns;
    for (const fabric::Link& l : topology.links()) {
        if (l.medium != fabric::Medium::Thz) continue;
        TwinLink t;
        t.snr_db = l.snr_db;
        t.sight = l.blockage.state;
        t.admin = l.state;
        auto it = utilization.find({l.a, l.b});
        t.utilization = it == utilization.end() ? 0.0 : it->second;
        t.nlos_rate_bps = l.nlos_rate_bps;
        t.last_update_ns = now_ns;
        snap.links[{l.a, l.b}] = t;
    }
    return snap;
}

namespace {

std::string key_name(const LinkKey& k) {
    return std::to_string(k.first) + "-" + std::to_string(k.second);
}

}  // namespace

std::vector<std::string> diff_twin(const TwinState& twin, const FabricSnapshot& snapshot) {
    std::vector<std::string> diffs;
    for (const auto& [key, mirrored] : twin.links) {
        auto it = snapshot.links.find(key);
        if (it == snapshot.links.end()) {
            diffs.push_back("link " + key_name(key) + " only in twin");
            continue;
        }
        const TwinLink& live = it->second;
        if (mirrored.snr_db != live.snr_db)
            diffs.push_back(key_name(key) + ".snr_db " + util::format_double(mirrored.snr_db) +
                            " != " + util::format_double(live.snr_db));
        if (mirrored.sight != live.sight) diffs.push_back(key_name(key) + ".sight differs");
        if (mirrored.admin != live.admin) diffs.push_back(key_name(key) + ".state differs");
        if (mirrored.utilization != live.utilization)
            diffs.push_back(key_name(key) + ".utilization differs");
        if (mirrored.nlos_rate_bps != live.nlos_rate_bps)
            diffs.push_back(key_name(key) + ".nlos_rate differs");
        if (mirrored.last_update_ns != live.last_update_ns)
            diffs.push_back(key_name(key) + ".last_update differs");
    }
    for (const auto& [key, live] : snapshot.links)
        if (!twin.links.contains(key)) diffs.push_back("link " + key_name(key) + " only in fabric");
    return diffs;
}

std::vector<TwinAction> twin_step(TwinState& twin, const FabricSnapshot& snapshot,
                                  const TwinConfig& config,
                                  const std::map<LinkKey, simcore::TimeNs>& next_blockage_on) {
    if (!twin.links.empty())
        for (const auto& [key, state] : snapshot.links)
            if (!twin.links.contains(key))
                throw std::invalid_argument("twin_step: link universe mismatch at " + key_name(key));
    if (!twin.links.empty() && twin.links.size() != snapshot.links.size())
        throw std::invalid_argument("twin_step: link universe mismatch");

    std::vector<TwinAction> actions;
    for (const auto& [key, live] : snapshot.links) {
        auto old_it = twin.links.find(key);
        bool was_blocked =
            old_it != twin.links.end() && old_it->second.admin == fabric::LinkState::Blocked;
        bool was_los = old_it == twin.links.end() || old_it->second.sight == channel::Sight::Los;
        if (live.admin == fabric::LinkState::Blocked && !was_blocked) {
            bool nlos_ok = was_los && live.nlos_rate_bps >= config.min_nlos_rate_bps;
            actions.push_back(TwinAction{
                nlos_ok ? TwinActionKind::RerouteNlos : TwinActionKind::RerouteOptical, key});
        }
        if (live.admin != fabric::LinkState::Active) twin.drained.erase(key);
    }

    if (config.predictions_enabled) {
        for (const auto& [key, fire_at] : next_blockage_on) {
            auto it = snapshot.links.find(key);
            if (it == snapshot.links.end() || it->second.admin != fabric::LinkState::Active)
                continue;
            if (fire_at <= snapshot.time_ns || fire_at > snapshot.time_ns + config.lookahead_ns) {
                twin.drained.erase(key);
                continue;
            }
            if (twin.drained.insert(key).second)
                actions.push_back(TwinAction{TwinActionKind::PreemptiveDrain, key});
        }
    }

    twin.links = snapshot.links;  // mirror exactly
    return actions;
}

}  // namespace wdcsim::orchestrator
