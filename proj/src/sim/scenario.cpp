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

#include "wdcsim/sim/scenario.hpp"

#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "wdcsim/util/text.hpp"

namespace wdcsim::sim {

namespace {

bool parse_bool(std::string_view value, const std::string& key) {
    if (value == "true") return true;
    if (value == "false") return false;
    throw std::invalid_argument("scenario key " + key + ": expected true or false");
}

using Setter = std::function<void(Scenario&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = [] {
        std::map<std::string, Setter> t;
        auto set_d = [&t](const std::string& key, auto member) {
            t[key] = [member](Scenario& s, const std::string& k, const std::string& v) {
                *member(s) = util::parse_double(v, k);
            };
        };
        auto set_i = [&t](const std::string& key, auto member) {
            t[key] = [member](Scenario& s, const std::string& k, const std::string& v) {
                *member(s) = static_cast<int>(util::parse_int(v, k));
            };
        };
        auto set_i64 = [&t](const std::string& key, auto member) {
            t[key] = [member](Scenario& s, const std::string& k, const std::string& v) {
                *member(s) = util::parse_int(v, k);
            };
        };
        auto set_u64 = [&t](const std::string& key, auto member) {
            t[key] = [member](Scenario& s, const std::string& k, const std::string& v) {
                *member(s) = static_cast<std::uint64_t>(util::parse_int(v, k));
            };
        };
        auto set_b = [&t](const std::string& key, auto member) {
            t[key] = [member](Scenario& s, const std::string& k, const std::string& v) {
                *member(s) = parse_bool(v, k);
            };
        };
        auto set_s = [&t](const std::string& key, auto member) {
            t[key] = [member](Scenario& s, const std::string&, const std::string& v) {
                *member(s) = v;
            };
        };

        set_u64("seed", [](Scenario& s) { return &s.seed; });
        set_i64("duration_ns", [](Scenario& s) { return &s.duration_ns; });
        set_d("frame_bits", [](Scenario& s) { return &s.frame_bits; });

        set_i("racks.count", [](Scenario& s) { return &s.racks.count; });
        set_d("racks.pitch_m", [](Scenario& s) { return &s.racks.pitch_m; });
        set_i("racks.radios", [](Scenario& s) { return &s.racks.radios; });

        set_d("channel.carrier_hz", [](Scenario& s) { return &s.channel.carrier_hz; });
        set_d("channel.bandwidth_hz", [](Scenario& s) { return &s.channel.bandwidth_hz; });
        set_d("channel.tx_power_dbm", [](Scenario& s) { return &s.channel.tx_power_dbm; });
        set_d("channel.tx_gain_dbi", [](Scenario& s) { return &s.channel.tx_gain_dbi; });
        set_d("channel.rx_gain_dbi", [](Scenario& s) { return &s.channel.rx_gain_dbi; });
        set_d("channel.noise_figure_db", [](Scenario& s) { return &s.channel.noise_figure_db; });
        set_d("channel.p_los", [](Scenario& s) { return &s.channel.p_los; });
        set_d("channel.nlos_loss_db", [](Scenario& s) { return &s.channel.nlos_loss_db; });
        set_d("channel.max_range_m", [](Scenario& s) { return &s.channel.max_range_m; });
        set_d("channel.shadow_sigma_db", [](Scenario& s) { return &s.channel.shadow_sigma_db; });
        set_s("channel.pathloss", [](Scenario& s) { return &s.channel.pathloss; });
        set_d("channel.pl0_db", [](Scenario& s) { return &s.channel.pl0_db; });
        set_d("channel.exponent_n", [](Scenario& s) { return &s.channel.exponent_n; });

        set_d("thz.static_power_w", [](Scenario& s) { return &s.thz.static_power_w; });
        set_d("thz.pa_efficiency", [](Scenario& s) { return &s.thz.pa_efficiency; });
        set_d("thz.bandwidth_hz", [](Scenario& s) { return &s.thz.bandwidth_hz; });
        set_d("thz.pa_max_dbm", [](Scenario& s) { return &s.thz.pa_max_dbm; });
        set_d("thz.alignment_ns", [](Scenario& s) { return &s.thz.alignment_ns; });
        set_d("thz.processing_ns", [](Scenario& s) { return &s.thz.processing_ns; });

        set_d("optical.module_power_w", [](Scenario& s) { return &s.optical.module_power_w; });
        set_d("optical.module_rate_bps", [](Scenario& s) { return &s.optical.module_rate_bps; });
        set_d("optical.switch_energy_j_per_bit",
              [](Scenario& s) { return &s.optical.switch_energy_j_per_bit; });
        set_d("optical.fiber_index", [](Scenario& s) { return &s.optical.fiber_index; });
        set_d("optical.per_switch_ns", [](Scenario& s) { return &s.optical.per_switch_ns; });
        set_d("optical.queue_mean_ns", [](Scenario& s) { return &s.optical.queue_mean_ns; });
        set_d("optical.queue_cap_ns", [](Scenario& s) { return &s.optical.queue_cap_ns; });
        set_d("optical.link_rate_bps", [](Scenario& s) { return &s.optical.link_rate_bps; });
        set_i("optical.tiers", [](Scenario& s) { return &s.optical.tiers; });
        set_i("optical.racks_per_tor", [](Scenario& s) { return &s.optical.racks_per_tor; });
        set_i("optical.tors_per_pod", [](Scenario& s) { return &s.optical.tors_per_pod; });

        set_d("copper.base_pj_per_bit", [](Scenario& s) { return &s.copper.base_pj_per_bit; });
        set_d("copper.equalized_pj_per_bit",
              [](Scenario& s) { return &s.copper.equalized_pj_per_bit; });
        set_d("copper.threshold_bps", [](Scenario& s) { return &s.copper.threshold_bps; });
        set_d("copper.max_reach_m", [](Scenario& s) { return &s.copper.max_reach_m; });

        set_s("traffic.generator", [](Scenario& s) { return &s.traffic.generator; });
        set_s("traffic.file", [](Scenario& s) { return &s.traffic.file; });
        set_d("traffic.demand_bps", [](Scenario& s) { return &s.traffic.demand_bps; });
        set_i("traffic.hotspot_pairs", [](Scenario& s) { return &s.traffic.hotspot_pairs; });
        set_d("traffic.hotspot_demand_bps",
              [](Scenario& s) { return &s.traffic.hotspot_demand_bps; });
        set_b("traffic.shift_per_epoch", [](Scenario& s) { return &s.traffic.shift_per_epoch; });

        set_s("orchestration.objective", [](Scenario& s) { return &s.orchestration.objective; });
        set_d("orchestration.bandwidth_weight",
              [](Scenario& s) { return &s.orchestration.bandwidth_weight; });
        set_d("orchestration.latency_weight",
              [](Scenario& s) { return &s.orchestration.latency_weight; });
        set_i64("orchestration.epoch_ns", [](Scenario& s) { return &s.orchestration.epoch_ns; });
        set_b("orchestration.predictions", [](Scenario& s) { return &s.orchestration.predictions; });
        set_i64("orchestration.lookahead_ns",
                [](Scenario& s) { return &s.orchestration.lookahead_ns; });
        set_s("orchestration.mode", [](Scenario& s) { return &s.orchestration.mode; });
        set_d("orchestration.steering_delay_ns",
              [](Scenario& s) { return &s.orchestration.steering_delay_ns; });
        set_u64("orchestration.matching_node_budget",
                [](Scenario& s) { return &s.orchestration.matching_node_budget; });

        set_b("blockage.enabled", [](Scenario& s) { return &s.blockage.enabled; });
        set_i64("blockage.mean_blocked_ns", [](Scenario& s) { return &s.blockage.mean_blocked_ns; });
        set_i64("blockage.mean_clear_ns", [](Scenario& s) { return &s.blockage.mean_clear_ns; });
        set_d("blockage.min_nlos_rate_bps",
              [](Scenario& s) { return &s.blockage.min_nlos_rate_bps; });
        return t;
    }();
    return table;
}

}  // namespace

Scenario Scenario::parse(const std::string& text) {
    Scenario s;
    std::istringstream in(text);
    std::string line;
    std::string section;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view body = util::trim(line);
        if (auto hash = body.find('#'); hash != std::string_view::npos)
            body = util::trim(body.substr(0, hash));
        if (body.empty()) continue;
        if (body.front() == '[') {
            if (body.back() != ']')
                throw std::invalid_argument("scenario line " + std::to_string(line_no) +
                                            ": malformed section header");
            section = std::string(util::trim(body.substr(1, body.size() - 2)));
            if (section.empty())
                throw std::invalid_argument("scenario line " + std::to_string(line_no) +
                                            ": empty section name");
            continue;
        }
        auto eq = body.find('=');
        if (eq == std::string_view::npos)
            throw std::invalid_argument("scenario line " + std::to_string(line_no) +
                                        ": expected key = value");
        std::string key(util::trim(body.substr(0, eq)));
        std::string value(util::trim(body.substr(eq + 1)));
        std::string path = section.empty() ? key : section + "." + key;
        auto it = setters().find(path);
        if (it == setters().end())
            throw std::invalid_argument("scenario: unknown key '" + path + "'");
        it->second(s, path, value);
    }
    s.validate();
    return s;
}

void Scenario::validate() const {
    auto fail = [](const std::string& what) { throw std::invalid_argument("scenario: " + what); };
    if (duration_ns <= 0) fail("duration_ns must be positive");
    if (racks.count < 2) fail("racks.count must be >= 2");
    if (racks.radios < 0) fail("racks.radios must be >= 0");
    if (!(racks.pitch_m > 0)) fail("racks.pitch_m must be positive");
    if (channel.pathloss != "free-space" && channel.pathloss != "close-in")
        fail("channel.pathloss must be free-space or close-in");
    if (channel.p_los < 0 || channel.p_los > 1) fail("channel.p_los outside [0, 1]");
    if (traffic.generator != "uniform" && traffic.generator != "hotspot" &&
        traffic.generator != "file")
        fail("traffic.generator must be uniform, hotspot, or file");
    if (traffic.generator == "file" && traffic.file.empty()) fail("traffic.file required");
    if (orchestration.objective != "bandwidth" && orchestration.objective != "latency" &&
        orchestration.objective != "balanced")
        fail("orchestration.objective must be bandwidth, latency, or balanced");
    if (orchestration.mode != "adaptive" && orchestration.mode != "frozen")
        fail("orchestration.mode must be adaptive or frozen");
    if (orchestration.epoch_ns <= 0) fail("orchestration.epoch_ns must be positive");
    if (optical.tiers < 1 || optical.tiers > 3) fail("optical.tiers must be 1, 2, or 3");
    objective().validate();
}

orchestrator::Objective Scenario::objective() const {
    orchestrator::Objective o;
    if (orchestration.objective == "bandwidth") o.kind = orchestrator::Objective::Kind::Bandwidth;
    else if (orchestration.objective == "latency") o.kind = orchestrator::Objective::Kind::Latency;
    else o.kind = orchestrator::Objective::Kind::Balanced;
    o.bandwidth_weight = orchestration.bandwidth_weight;
    o.latency_weight = orchestration.latency_weight;
    return o;
}

std::string Scenario::canonical_text() const {
    std::ostringstream out;
    auto d = util::format_double;
    out << "seed = " << seed << "\n";
    out << "duration_ns = " << duration_ns << "\n";
    out << "frame_bits = " << d(frame_bits) << "\n";
    out << "\n[racks]\n";
    out << "count = " << racks.count << "\n";
    out << "pitch_m = " << d(racks.pitch_m) << "\n";
    out << "radios = " << racks.radios << "\n";
    out << "\n[channel]\n";
    out << "carrier_hz = " << d(channel.carrier_hz) << "\n";
    out << "bandwidth_hz = " << d(channel.bandwidth_hz) << "\n";
    out << "tx_power_dbm = " << d(channel.tx_power_dbm) << "\n";
    out << "tx_gain_dbi = " << d(channel.tx_gain_dbi) << "\n";
    out << "rx_gain_dbi = " << d(channel.rx_gain_dbi) << "\n";
    out << "noise_figure_db = " << d(channel.noise_figure_db) << "\n";
    out << "p_los = " << d(channel.p_los) << "\n";
    out << "nlos_loss_db = " << d(channel.nlos_loss_db) << "\n";
    out << "max_range_m = " << d(channel.max_range_m) << "\n";
    out << "shadow_sigma_db = " << d(channel.shadow_sigma_db) << "\n";
    out << "pathloss = " << channel.pathloss << "\n";
    out << "pl0_db = " << d(channel.pl0_db) << "\n";
    out << "exponent_n = " << d(channel.exponent_n) << "\n";
    out << "\n[thz]\n";
    out << "static_power_w = " << d(thz.static_power_w) << "\n";
    out << "pa_efficiency = " << d(thz.pa_efficiency) << "\n";
    out << "bandwidth_hz = " << d(thz.bandwidth_hz) << "\n";
    out << "pa_max_dbm = " << d(thz.pa_max_dbm) << "\n";
    out << "alignment_ns = " << d(thz.alignment_ns) << "\n";
    out << "processing_ns = " << d(thz.processing_ns) << "\n";
    out << "\n[optical]\n";
    out << "module_power_w = " << d(optical.module_power_w) << "\n";
    out << "module_rate_bps = " << d(optical.module_rate_bps) << "\n";
    out << "switch_energy_j_per_bit = " << d(optical.switch_energy_j_per_bit) << "\n";
    out << "fiber_index = " << d(optical.fiber_index) << "\n";
    out << "per_switch_ns = " << d(optical.per_switch_ns) << "\n";
    out << "queue_mean_ns = " << d(optical.queue_mean_ns) << "\n";
    out << "queue_cap_ns = " << d(optical.queue_cap_ns) << "\n";
    out << "link_rate_bps = " << d(optical.link_rate_bps) << "\n";
    out << "tiers = " << optical.tiers << "\n";
    out << "racks_per_tor = " << optical.racks_per_tor << "\n";
    out << "tors_per_pod = " << optical.tors_per_pod << "\n";
    out << "\n[copper]\n";
    out << "base_pj_per_bit = " << d(copper.base_pj_per_bit) << "\n";
    out << "equalized_pj_per_bit = " << d(copper.equalized_pj_per_bit) << "\n";
    out << "threshold_bps = " << d(copper.threshold_bps) << "\n";
    out << "max_reach_m = " << d(copper.max_reach_m) << "\n";
    out << "\n[traffic]\n";
    out << "generator = " << traffic.generator << "\n";
    if (!traffic.file.empty()) out << "file = " << traffic.file << "\n";
    out << "demand_bps = " << d(traffic.demand_bps) << "\n";
    out << "hotspot_pairs = " << traffic.hotspot_pairs << "\n";
    out << "hotspot_demand_bps = " << d(traffic.hotspot_demand_bps) << "\n";
    out << "shift_per_epoch = " << (traffic.shift_per_epoch ? "true" : "false") << "\n";
    out << "\n[orchestration]\n";
    out << "objective = " << orchestration.objective << "\n";
    out << "bandwidth_weight = " << d(orchestration.bandwidth_weight) << "\n";
    out << "latency_weight = " << d(orchestration.latency_weight) << "\n";
    out << "epoch_ns = " << orchestration.epoch_ns << "\n";
    out << "predictions = " << (orchestration.predictions ? "true" : "false") << "\n";
    out << "lookahead_ns = " << orchestration.lookahead_ns << "\n";
    out << "mode = " << orchestration.mode << "\n";
    out << "steering_delay_ns = " << d(orchestration.steering_delay_ns) << "\n";
    out << "matching_node_budget = " << orchestration.matching_node_budget << "\n";
    out << "\n[blockage]\n";
    out << "enabled = " << (blockage.enabled ? "true" : "false") << "\n";
    out << "mean_blocked_ns = " << blockage.mean_blocked_ns << "\n";
    out << "mean_clear_ns = " << blockage.mean_clear_ns << "\n";
    out << "min_nlos_rate_bps = " << d(blockage.min_nlos_rate_bps) << "\n";
    return out.str();
}

std::string Scenario::digest() const {
    return util::fnv1a64_hex(canonical_text());
}

}  // namespace wdcsim::sim
