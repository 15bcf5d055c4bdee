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

#include "wdcsim/fabric/topology.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "wdcsim/util/errors.hpp"

namespace wdcsim::fabric {

const char* to_string(SwitchTier t) {
    switch (t) {
        case SwitchTier::Tor: return "tor";
        case SwitchTier::Aggregation: return "aggregation";
        case SwitchTier::Core: return "core";
    }
    return "?";
}

const char* to_string(LinkState s) {
    switch (s) {
        case LinkState::Active: return "active";
        case LinkState::Inactive: return "inactive";
        case LinkState::Blocked: return "blocked";
    }
    return "?";
}

int Topology::add_rack(double x_m, double y_m, int radio_count) {
    if (!switches_.empty()) throw std::logic_error("Topology: racks must be added before switches");
    if (radio_count < 0) throw std::invalid_argument("Topology: negative radio count");
    for (const Rack& r : racks_)
        if (r.x_m == x_m && r.y_m == y_m)
            throw std::invalid_argument("Topology: duplicate rack position");
    int id = static_cast<int>(racks_.size());
    racks_.push_back(Rack{id, x_m, y_m, radio_count});
    adjacency_.emplace_back();
    return id;
}

int Topology::add_switch(SwitchTier tier) {
    int id = node_count();
    switches_.push_back(Switch{id, tier});
    adjacency_.emplace_back();
    return id;
}

int Topology::add_link(Link link) {
    if (link.a < 0 || link.b < 0 || link.a >= node_count() || link.b >= node_count())
        throw std::invalid_argument("Topology: link endpoint out of range");
    if (link.a == link.b) throw std::invalid_argument("Topology: self-loop link");
    if (link.medium == Medium::Thz) {
        if (!is_rack(link.a) || !is_rack(link.b))
            throw std::invalid_argument("Topology: THz links are rack-to-rack only");
        if (link.a > link.b) std::swap(link.a, link.b);
    }
    link.id = static_cast<int>(links_.size());
    adjacency_[static_cast<std::size_t>(link.a)].push_back(link.id);
    adjacency_[static_cast<std::size_t>(link.b)].push_back(link.id);
    links_.push_back(std::move(link));
    return links_.back().id;
}

int Topology::tier_level(int node) const {
    if (is_rack(node)) return 0;
    return static_cast<int>(switches_.at(static_cast<std::size_t>(node) - racks_.size()).tier);
}

std::span<const int> Topology::links_at(int node) const {
    return adjacency_.at(static_cast<std::size_t>(node));
}

const Link* Topology::find_thz_link(int rack_a, int rack_b) const {
    if (rack_a > rack_b) std::swap(rack_a, rack_b);
    for (int id : links_at(rack_a)) {
        const Link& l = links_[static_cast<std::size_t>(id)];
        if (l.medium == Medium::Thz && l.a == rack_a && l.b == rack_b) return &l;
    }
    return nullptr;
}

Link* Topology::find_thz_link(int rack_a, int rack_b) {
    return const_cast<Link*>(std::as_const(*this).find_thz_link(rack_a, rack_b));
}

int Topology::active_thz_degree(int rack) const {
    int degree = 0;
    for (int id : links_at(rack)) {
        const Link& l = links_[static_cast<std::size_t>(id)];
        // A blocked-but-assigned beam still occupies its radio.
        if (l.medium == Medium::Thz && l.state != LinkState::Inactive) ++degree;
    }
    return degree;
}

void Topology::check_radio_capacity() const {
    for (const Rack& r : racks_) {
        int degree = active_thz_degree(r.id);
        if (degree > r.radio_count)
            throw InvariantViolation("rack " + std::to_string(r.id) + " has " +
                                     std::to_string(degree) + " active beams but only " +
                                     std::to_string(r.radio_count) + " radios");
    }
}

bool Topology::optical_backbone_connected() const {
    if (racks_.empty()) return true;
    std::vector<char> seen(static_cast<std::size_t>(node_count()), 0);
    std::queue<int> frontier;
    frontier.push(0);
    seen[0] = 1;
    while (!frontier.empty()) {
        int node = frontier.front();
        frontier.pop();
        for (int id : links_at(node)) {
            const Link& l = links_[static_cast<std::size_t>(id)];
            if (l.medium != Medium::Optical || l.state != LinkState::Active) continue;
            int other = l.a == node ? l.b : l.a;
            if (!seen[static_cast<std::size_t>(other)]) {
                seen[static_cast<std::size_t>(other)] = 1;
                frontier.push(other);
            }
        }
    }
    for (const Rack& r : racks_)
        if (!seen[static_cast<std::size_t>(r.id)]) return false;
    return true;
}

Topology build_fat_tree(std::span<const Rack> racks, int tiers, double link_rate_bps,
                        const FatTreeParams& params) {
    int rack_count = static_cast<int>(racks.size());
    if (rack_count < 2) throw std::invalid_argument("build_fat_tree: need at least 2 racks");
    if (tiers < 1 || tiers > 3) throw std::invalid_argument("build_fat_tree: unsupported tier count");
    if (!(link_rate_bps > 0)) throw std::invalid_argument("build_fat_tree: link rate must be positive");

    Topology topo;
    for (const Rack& r : racks) topo.add_rack(r.x_m, r.y_m, r.radio_count);

    auto fiber = [&](int a, int b, double len) {
        Link l;
        l.a = a;
        l.b = b;
        l.medium = Medium::Optical;
        l.rate_bps = link_rate_bps;
        l.state = LinkState::Active;
        l.distance_m = len;
        topo.add_link(l);
    };

    if (tiers == 1) {
        int tor = topo.add_switch(SwitchTier::Tor);
        for (int r = 0; r < rack_count; ++r) fiber(r, tor, params.rack_tor_m);
        return topo;
    }

    int tor_size = std::max(1, params.racks_per_tor);
    int tor_count = (rack_count + tor_size - 1) / tor_size;
    std::vector<int> tors;
    for (int t = 0; t < tor_count; ++t) tors.push_back(topo.add_switch(SwitchTier::Tor));
    for (int r = 0; r < rack_count; ++r) fiber(r, tors[static_cast<std::size_t>(r / tor_size)], params.rack_tor_m);

    if (tiers == 2) {
        int agg = topo.add_switch(SwitchTier::Aggregation);
        for (int t : tors) fiber(t, agg, params.tor_agg_m);
        return topo;
    }

    int pod_tors = std::max(1, params.tors_per_pod);
    int pod_count = (tor_count + pod_tors - 1) / pod_tors;
    std::vector<int> aggs;
    for (int p = 0; p < pod_count; ++p) aggs.push_back(topo.add_switch(SwitchTier::Aggregation));
    for (int t = 0; t < tor_count; ++t)
        fiber(tors[static_cast<std::size_t>(t)], aggs[static_cast<std::size_t>(t / pod_tors)], params.tor_agg_m);
    int core = topo.add_switch(SwitchTier::Core);
    for (int a : aggs) fiber(a, core, params.agg_core_m);
    return topo;
}

Topology build_fat_tree(int rack_count, int tiers, double link_rate_bps,
                        const FatTreeParams& params) {
    if (rack_count < 2) throw std::invalid_argument("build_fat_tree: need at least 2 racks");
    std::vector<Rack> racks = grid_layout(rack_count, 1.0, 0);
    return build_fat_tree(racks, tiers, link_rate_bps, params);
}

std::vector<Rack> grid_layout(int count, double pitch_m, int radios_per_rack) {
    if (count < 1) throw std::invalid_argument("grid_layout: need at least 1 rack");
    if (!(pitch_m > 0)) throw std::invalid_argument("grid_layout: pitch must be positive");
    int columns = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(count))));
    std::vector<Rack> racks;
    for (int i = 0; i < count; ++i)
        racks.push_back(Rack{i, (i % columns) * pitch_m, (i / columns) * pitch_m, radios_per_rack});
    return racks;
}

std::vector<CandidateLink> build_thz_overlay(std::span<const Rack> racks,
                                             const channel::PathLossModel& plm,
                                             const OverlayParams& params,
                                             simcore::RngStream& blockage_stream,
                                             simcore::RngStream* shadow_stream) {
    std::vector<CandidateLink> out;
    for (std::size_t i = 0; i < racks.size(); ++i) {
        for (std::size_t j = i + 1; j < racks.size(); ++j) {
            double dx = racks[i].x_m - racks[j].x_m;
            double dy = racks[i].y_m - racks[j].y_m;
            double d = std::sqrt(dx * dx + dy * dy);
            if (d > params.max_range_m) continue;

            CandidateLink c{};
            c.rack_a = racks[i].id;
            c.rack_b = racks[j].id;
            c.distance_m = d;
            c.blockage = channel::sample_blockage(params.p_los, params.nlos_extra_loss_db,
                                                  blockage_stream);
            c.shadow_db = 0.0;
            if (plm.shadow_sigma_db > 0 && shadow_stream)
                c.shadow_db = plm.shadow_sigma_db * shadow_stream->normal();

            double pl = channel::path_loss_db(plm, std::max(d, plm.d0_m)) + c.shadow_db;
            channel::LinkBudget budget;
            budget.tx_power_dbm = params.tx_power_dbm;
            budget.tx_gain_dbi = params.tx_gain_dbi;
            budget.rx_gain_dbi = params.rx_gain_dbi;
            budget.noise_figure_db = params.noise_figure_db;
            budget.bandwidth_hz = params.bandwidth_hz;

            budget.path_loss_db = pl;
            c.los_rate_bps = channel::achievable_rate_bps(budget, params.ceiling);
            double los_snr = budget.snr_db();
            budget.path_loss_db = pl + params.nlos_extra_loss_db;
            c.nlos_rate_bps = channel::achievable_rate_bps(budget, params.ceiling);
            double nlos_snr = budget.snr_db();

            bool los = c.blockage.state == channel::Sight::Los;
            c.rate_bps = los ? c.los_rate_bps : c.nlos_rate_bps;
            c.snr_db = los ? los_snr : nlos_snr;
            out.push_back(c);
        }
    }
    return out;
}

std::vector<int> install_candidates(Topology& topology, std::span<const CandidateLink> candidates) {
    std::vector<int> ids;
    ids.reserve(candidates.size());
    for (const CandidateLink& c : candidates) {
        Link l;
        l.a = c.rack_a;
        l.b = c.rack_b;
        l.medium = Medium::Thz;
        l.rate_bps = c.rate_bps;
        l.state = LinkState::Inactive;
        l.distance_m = c.distance_m;
        l.blockage = c.blockage;
        l.snr_db = c.snr_db;
        l.los_rate_bps = c.los_rate_bps;
        l.nlos_rate_bps = c.nlos_rate_bps;
        ids.push_back(topology.add_link(l));
    }
    return ids;
}

std::string Topology::to_json() const {
    nlohmann::ordered_json j;
    j["racks"] = nlohmann::ordered_json::array();
    for (const Rack& r : racks_)
        j["racks"].push_back({{"id", r.id}, {"x", r.x_m}, {"y", r.y_m}, {"radios", r.radio_count}});
    j["switches"] = nlohmann::ordered_json::array();
    for (const Switch& s : switches_)
        j["switches"].push_back({{"id", s.id}, {"tier", to_string(s.tier)}});
    j["links"] = nlohmann::ordered_json::array();
    for (const Link& l : links_)
        j["links"].push_back({{"a", l.a},
                              {"b", l.b},
                              {"medium", costmodels::to_string(l.medium)},
                              {"rate_bps", l.rate_bps},
                              {"state", to_string(l.state)},
                              {"distance_m", l.distance_m}});
    return j.dump(2);
}

namespace {

SwitchTier tier_from_string(const std::string& s) {
    if (s == "tor") return SwitchTier::Tor;
    if (s == "aggregation") return SwitchTier::Aggregation;
    if (s == "core") return SwitchTier::Core;
    throw std::invalid_argument("topology json: unknown tier '" + s + "'");
}

Medium medium_from_string(const std::string& s) {
    if (s == "thz") return Medium::Thz;
    if (s == "optical") return Medium::Optical;
    if (s == "copper") return Medium::Copper;
    throw std::invalid_argument("topology json: unknown medium '" + s + "'");
}

LinkState state_from_string(const std::string& s) {
    if (s == "active") return LinkState::Active;
    if (s == "inactive") return LinkState::Inactive;
    if (s == "blocked") return LinkState::Blocked;
    throw std::invalid_argument("topology json: unknown link state '" + s + "'");
}

}  // namespace

Topology Topology::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    Topology topo;
    for (const auto& r : j.at("racks")) {
        int id = topo.add_rack(r.at("x").get<double>(), r.at("y").get<double>(),
                               r.at("radios").get<int>());
        if (id != r.at("id").get<int>())
            throw std::invalid_argument("topology json: rack ids must be dense and in order");
    }
    for (const auto& s : j.at("switches")) {
        int id = topo.add_switch(tier_from_string(s.at("tier").get<std::string>()));
        if (id != s.at("id").get<int>())
            throw std::invalid_argument("topology json: switch ids must follow rack ids in order");
    }
    for (const auto& l : j.at("links")) {
        Link link;
        link.a = l.at("a").get<int>();
        link.b = l.at("b").get<int>();
        link.medium = medium_from_string(l.at("medium").get<std::string>());
        link.rate_bps = l.at("rate_bps").get<double>();
        link.state = state_from_string(l.at("state").get<std::string>());
        if (l.contains("distance_m")) {
            link.distance_m = l.at("distance_m").get<double>();
        } else if (topo.is_rack(link.a) && topo.is_rack(link.b)) {
            const Rack& ra = topo.racks()[static_cast<std::size_t>(link.a)];
            const Rack& rb = topo.racks()[static_cast<std::size_t>(link.b)];
            link.distance_m = std::hypot(ra.x_m - rb.x_m, ra.y_m - rb.y_m);
        }
        topo.add_link(link);
    }
    return topo;
}

}  // namespace wdcsim::fabric
