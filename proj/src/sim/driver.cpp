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

#include "wdcsim/sim/driver.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "wdcsim/costmodels/energy.hpp"
#include "wdcsim/fabric/routing.hpp"
#include "wdcsim/orchestrator/twin.hpp"
#include "wdcsim/util/errors.hpp"
#include "wdcsim/util/text.hpp"

namespace wdcsim::sim {

namespace {

using fabric::CandidateLink;
using fabric::LinkState;
using fabric::Medium;
using orchestrator::LinkKey;
using simcore::EventKind;
using simcore::TimeNs;

std::string key_name(const LinkKey& k) {
    return std::to_string(k.first) + "-" + std::to_string(k.second);
}

std::string planned_list(const std::vector<orchestrator::PlannedLink>& links) {
    std::string out;
    for (std::size_t i = 0; i < links.size(); ++i) {
        if (i) out += ';';
        out += std::to_string(links[i].a) + "-" + std::to_string(links[i].b);
    }
    return out;
}

struct Driver {
    const Scenario& sc;
    simcore::SimEngine engine;
    fabric::Topology topo;
    channel::PathLossModel plm;
    fabric::RoutingParams routing;
    costmodels::ThzEnergyModel thz_energy;
    costmodels::OpticalEnergyModel optical_energy;
    channel::RateCeiling ceiling;

    std::vector<CandidateLink> candidates;
    std::vector<int> cand_link_ids;
    std::vector<double> latency_saved_ns;
    std::map<LinkKey, std::size_t> cand_index;

    struct Dyn {
        bool admin_up = false;
        bool obstructed = false;
        bool degraded = false;   // re-steered onto the reflected path
        bool draining = false;   // preemptively emptied before a predicted blockage
    };
    std::vector<Dyn> dyn;
    std::map<LinkKey, TimeNs> next_blockage_on;

    orchestrator::TwinState twin;
    orchestrator::TwinConfig twin_config;

    std::vector<int> perm;  // seeded rack permutation for hotspot selection
    fabric::TrafficMatrix file_tm;
    fabric::TrafficMatrix current_tm;
    fabric::TrafficReport report;
    std::map<LinkKey, double> thz_util;
    TimeNs last_account = 0;

    simcore::RngStream dynamics_rng;

    // accumulators
    double offered_bits = 0, served_bits = 0, lost_bits = 0;
    double latency_weight_sum = 0, latency_weighted_sum = 0;
    std::vector<std::pair<double, double>> latency_samples;  // (bits, latency_ns)
    std::map<std::string, double> energy_j, bits_by_medium;
    std::map<LinkKey, double> blocked_ns, lost_by_link;
    std::uint64_t reconfig_count = 0;
    std::vector<orchestrator::PlannedLink> active_set;
    std::ostringstream reconfig_log;

    explicit Driver(const Scenario& scenario)
        : sc(scenario), dynamics_rng(scenario.seed, "blockage-dynamics") {
        sc.validate();
        build_models();
        build_fabric();
        build_traffic();
        build_blockage_schedule();
        reconfig_log << "epoch,time_ns,activated,deactivated,objective,matched_weight\n";
        engine.schedule(0, EventKind::ReconfigEpoch, "epoch 0",
                        [this](simcore::SimEngine&) { on_epoch(0); });
    }

    void build_models() {
        if (sc.channel.pathloss == "free-space" && sc.channel.shadow_sigma_db == 0) {
            plm = channel::PathLossModel::free_space(sc.channel.carrier_hz);
        } else {
            double pl0 = sc.channel.pl0_db != 0
                             ? sc.channel.pl0_db
                             : channel::free_space_path_loss_db(1.0, sc.channel.carrier_hz);
            double n = sc.channel.pathloss == "free-space" ? 2.0 : sc.channel.exponent_n;
            plm = channel::PathLossModel::close_in(sc.channel.carrier_hz, pl0, n,
                                                   sc.channel.shadow_sigma_db);
        }
        routing.metric = fabric::RouteMetric::Latency;
        routing.frame_bits = sc.frame_bits;
        routing.latency.alignment_ns = sc.thz.alignment_ns;
        routing.latency.processing_ns = sc.thz.processing_ns;
        routing.latency.per_switch_ns = sc.optical.per_switch_ns;
        routing.latency.queue_mean_ns = sc.optical.queue_mean_ns;
        routing.latency.queue_cap_ns = sc.optical.queue_cap_ns;
        routing.latency.fiber_group_index = sc.optical.fiber_index;

        thz_energy.static_power_w = sc.thz.static_power_w;
        thz_energy.pa_efficiency = sc.thz.pa_efficiency;
        thz_energy.bandwidth_hz = sc.thz.bandwidth_hz;
        thz_energy.pa_max_dbm = sc.thz.pa_max_dbm;
        thz_energy.tx_gain_dbi = sc.channel.tx_gain_dbi;
        thz_energy.rx_gain_dbi = sc.channel.rx_gain_dbi;
        thz_energy.noise_figure_db = sc.channel.noise_figure_db;

        optical_energy.module_power_w = sc.optical.module_power_w;
        optical_energy.module_rate_bps = sc.optical.module_rate_bps;
        optical_energy.switch_energy_j_per_bit = sc.optical.switch_energy_j_per_bit;
        optical_energy.fiber_group_index = sc.optical.fiber_index;

        twin_config.predictions_enabled = sc.orchestration.predictions;
        twin_config.lookahead_ns = sc.orchestration.lookahead_ns;
        twin_config.min_nlos_rate_bps = sc.blockage.min_nlos_rate_bps;
    }

    void build_fabric() {
        std::vector<fabric::Rack> racks =
            fabric::grid_layout(sc.racks.count, sc.racks.pitch_m, sc.racks.radios);
        fabric::FatTreeParams ft;
        ft.racks_per_tor = sc.optical.racks_per_tor;
        ft.tors_per_pod = sc.optical.tors_per_pod;
        topo = fabric::build_fat_tree(racks, sc.optical.tiers, sc.optical.link_rate_bps, ft);

        fabric::OverlayParams op;
        op.max_range_m = sc.channel.max_range_m;
        op.p_los = sc.channel.p_los;
        op.nlos_extra_loss_db = sc.channel.nlos_loss_db;
        op.tx_power_dbm = sc.channel.tx_power_dbm;
        op.tx_gain_dbi = sc.channel.tx_gain_dbi;
        op.rx_gain_dbi = sc.channel.rx_gain_dbi;
        op.noise_figure_db = sc.channel.noise_figure_db;
        op.bandwidth_hz = sc.channel.bandwidth_hz;
        op.ceiling = ceiling;

        simcore::RngStream sight(sc.seed, "blockage");
        simcore::RngStream shadow(sc.seed, "shadow");
        candidates = fabric::build_thz_overlay(racks, plm, op, sight, &shadow);
        cand_link_ids = fabric::install_candidates(topo, candidates);
        dyn.assign(candidates.size(), Dyn{});

        for (std::size_t i = 0; i < candidates.size(); ++i) {
            const CandidateLink& c = candidates[i];
            cand_index[{c.rack_a, c.rack_b}] = i;
            auto optical_path = fabric::route(topo, c.rack_a, c.rack_b, routing);
            double optical_latency =
                optical_path ? optical_path->budget.total_ns() : 0.0;
            double thz_latency = costmodels::link_latency(Medium::Thz, c.distance_m, c.rate_bps,
                                                          sc.frame_bits, 0, routing.latency)
                                     .total_ns();
            latency_saved_ns.push_back(optical_latency - thz_latency);
        }
    }

    void build_traffic() {
        perm.resize(static_cast<std::size_t>(sc.racks.count));
        for (int i = 0; i < sc.racks.count; ++i) perm[static_cast<std::size_t>(i)] = i;
        simcore::RngStream shuffle(sc.seed, "traffic");
        for (std::size_t i = perm.size(); i > 1; --i) {
            auto j = static_cast<std::size_t>(shuffle.bits() % i);
            std::swap(perm[i - 1], perm[j]);
        }
        if (sc.traffic.generator == "file") {
            std::ifstream in(sc.traffic.file);
            if (!in) throw std::invalid_argument("traffic.file: cannot open '" + sc.traffic.file + "'");
            file_tm = fabric::TrafficMatrix::from_csv(in);
        }
    }

    fabric::TrafficMatrix traffic_for_epoch(std::uint64_t epoch) const {
        if (sc.traffic.generator == "file") return file_tm;
        fabric::TrafficMatrix tm;
        for (int s = 0; s < sc.racks.count; ++s)
            for (int t = 0; t < sc.racks.count; ++t)
                if (s != t && sc.traffic.demand_bps > 0) tm.set(s, t, sc.traffic.demand_bps);
        if (sc.traffic.generator == "hotspot") {
            int r = sc.racks.count;
            auto offset = sc.traffic.shift_per_epoch ? static_cast<int>(epoch % perm.size()) : 0;
            for (int i = 0; i < sc.traffic.hotspot_pairs; ++i) {
                int a = perm[static_cast<std::size_t>((2 * i + offset) % r)];
                int b = perm[static_cast<std::size_t>((2 * i + 1 + offset) % r)];
                if (a == b) continue;
                tm.add(a, b, sc.traffic.hotspot_demand_bps);
                tm.add(b, a, sc.traffic.hotspot_demand_bps);
            }
        }
        return tm;
    }

    void build_blockage_schedule() {
        if (!sc.blockage.enabled) return;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            TimeNs at = static_cast<TimeNs>(
                std::llround(dynamics_rng.exponential(static_cast<double>(sc.blockage.mean_clear_ns))));
            schedule_blockage_on(i, at);
        }
    }

    LinkKey key_of(std::size_t i) const {
        return {candidates[i].rack_a, candidates[i].rack_b};
    }

    void schedule_blockage_on(std::size_t i, TimeNs at) {
        next_blockage_on[key_of(i)] = at;
        engine.schedule(at, EventKind::BlockageOn, key_name(key_of(i)),
                        [this, i](simcore::SimEngine&) { on_blockage_on(i); });
        if (sc.orchestration.predictions) {
            // Wake the twin just as the predicted blockage enters the
            // lookahead window so the drain can happen in time.
            TimeNs check = std::max<TimeNs>(engine.now(), at - sc.orchestration.lookahead_ns);
            engine.schedule(check, EventKind::ReconfigEpoch, "twin-check " + key_name(key_of(i)),
                            [this](simcore::SimEngine&) { touch(); });
        }
    }

    /// Derives the admin/physical state of candidate i into its link.
    void derive_link_state(std::size_t i) {
        fabric::Link& l = topo.link(cand_link_ids[i]);
        const Dyn& d = dyn[i];
        if (!d.admin_up) {
            l.state = LinkState::Inactive;
        } else if (d.draining) {
            l.state = LinkState::Inactive;  // emptied ahead of a predicted blockage
        } else if (d.obstructed && !d.degraded) {
            l.state = LinkState::Blocked;
        } else {
            l.state = LinkState::Active;
        }
        if (d.obstructed && d.degraded) {
            l.rate_bps = candidates[i].nlos_rate_bps;
            l.blockage = channel::BlockageState{channel::Sight::Nlos, sc.channel.nlos_loss_db};
        } else {
            l.rate_bps = candidates[i].rate_bps;
            l.blockage = candidates[i].blockage;
        }
    }

    double thz_link_energy_per_bit(const fabric::Link& l) const {
        double pl = channel::path_loss_db(plm, std::max(l.distance_m, plm.d0_m));
        if (auto it = cand_index.find({l.a, l.b}); it != cand_index.end())
            pl += candidates[it->second].shadow_db;
        if (l.blockage.state == channel::Sight::Nlos) pl += l.blockage.extra_loss_db;
        double rate = std::min(l.rate_bps, ceiling.bps());
        auto e = costmodels::thz_energy_per_bit_at_pl(thz_energy, pl, rate, ceiling);
        return e.value_or(0.0);
    }

    void integrate(TimeNs now) {
        if (now <= last_account) {
            last_account = now;
            return;
        }
        double dt_s = static_cast<double>(now - last_account) * 1e-9;
        for (const fabric::FlowAssignment& flow : report.flows) {
            double offered = flow.demand_bps * dt_s;
            double served = offered * flow.served_fraction;
            offered_bits += offered;
            served_bits += served;
            double latency = flow.path.budget.total_ns();
            latency_weight_sum += offered;
            latency_weighted_sum += offered * latency;
            latency_samples.emplace_back(offered, latency);
            const char* medium = flow.path.direct_thz() ? "thz" : "optical";
            bits_by_medium[medium] += served;
            if (flow.path.direct_thz()) {
                energy_j["thz"] += served * thz_link_energy_per_bit(topo.link(flow.path.link_ids[0]));
            } else if (!flow.path.link_ids.empty()) {
                energy_j["optical"] +=
                    served * costmodels::optical_energy_per_bit(optical_energy,
                                                                flow.path.switch_count);
            }
        }
        double dt_ns = static_cast<double>(now - last_account);
        for (std::size_t i = 0; i < candidates.size(); ++i)
            if (topo.link(cand_link_ids[i]).state == LinkState::Blocked)
                blocked_ns[key_of(i)] += dt_ns;
        last_account = now;
    }

    void recompute_allocation() {
        report = fabric::apply_traffic(topo, current_tm, routing);
        thz_util.clear();
        for (const fabric::LinkLoad& load : report.loads) {
            const fabric::Link& l = topo.link(load.link_id);
            if (l.medium != Medium::Thz) continue;
            LinkKey key{l.a, l.b};
            auto it = thz_util.find(key);
            if (it == thz_util.end() || load.utilization > it->second)
                thz_util[key] = load.utilization;
        }
    }

    void run_twin() {
        auto snapshot = orchestrator::snapshot_fabric(topo, thz_util, engine.now());
        auto actions = orchestrator::twin_step(twin, snapshot, twin_config, next_blockage_on);
        auto diffs = orchestrator::diff_twin(twin, snapshot);
        if (!diffs.empty())
            throw InvariantViolation("twin diverged from fabric: " + diffs.front());
        for (const orchestrator::TwinAction& action : actions) {
            auto idx = cand_index.at(action.link);
            switch (action.kind) {
                case orchestrator::TwinActionKind::RerouteNlos: {
                    TimeNs at = engine.now() +
                                static_cast<TimeNs>(std::llround(sc.orchestration.steering_delay_ns));
                    engine.schedule(at, EventKind::ReconfigEpoch,
                                    "resteer " + key_name(action.link),
                                    [this, idx](simcore::SimEngine&) { on_resteer(idx); });
                    break;
                }
                case orchestrator::TwinActionKind::RerouteOptical:
                    break;  // allocation already falls back over the backbone
                case orchestrator::TwinActionKind::PreemptiveDrain:
                    dyn[idx].draining = true;
                    derive_link_state(idx);
                    break;
            }
        }
        if (!actions.empty()) {
            // Drains changed link states; mirror again so the twin stays exact.
            auto resnap = orchestrator::snapshot_fabric(topo, thz_util, engine.now());
            twin.links = resnap.links;
        }
    }

    /// Integrate the elapsed interval under the old allocation, then
    /// reconcile the twin and rebuild the allocation for the new state.
    void touch() {
        integrate(engine.now());
        recompute_allocation();
        run_twin();
        recompute_allocation();  // twin actions may have drained links
        topo.check_radio_capacity();
    }

    void on_epoch(std::uint64_t epoch) {
        integrate(engine.now());
        current_tm = traffic_for_epoch(epoch);

        bool plan_now = sc.orchestration.mode == "adaptive" || epoch == 0;
        if (plan_now) {
            auto effective = candidates;
            for (std::size_t i = 0; i < effective.size(); ++i) {
                if (!dyn[i].obstructed) continue;
                bool reflect_ok = candidates[i].blockage.state == channel::Sight::Los &&
                                  candidates[i].nlos_rate_bps >= sc.blockage.min_nlos_rate_bps;
                effective[i].rate_bps = reflect_ok ? candidates[i].nlos_rate_bps : 0.0;
            }
            std::vector<int> caps;
            caps.reserve(topo.racks().size());
            for (const fabric::Rack& r : topo.racks()) caps.push_back(r.radio_count);

            orchestrator::SelectInputs inputs;
            inputs.candidates = effective;
            inputs.traffic = &current_tm;
            inputs.radio_caps = caps;
            inputs.objective = sc.objective();
            inputs.latency_saved_ns = latency_saved_ns;
            inputs.currently_active = active_set;
            inputs.steering_delay_ns = sc.orchestration.steering_delay_ns;
            inputs.epoch_id = epoch;
            inputs.options.node_budget = sc.orchestration.matching_node_budget;
            orchestrator::ReconfigPlan plan = orchestrator::select_links(inputs);

            if (!plan.is_identity()) ++reconfig_count;
            reconfig_log << epoch << ',' << engine.now() << ',' << planned_list(plan.activate)
                         << ',' << planned_list(plan.deactivate) << ','
                         << sc.orchestration.objective << ','
                         << util::format_double(plan.matched_weight) << '\n';

            for (const orchestrator::PlannedLink& l : plan.deactivate) {
                auto idx = cand_index.at({l.a, l.b});
                dyn[idx].admin_up = false;
                dyn[idx].draining = false;
            }
            orchestrator::apply_plan(topo, plan, engine, [this](const orchestrator::PlannedLink& l) {
                auto idx = cand_index.at({l.a, l.b});
                dyn[idx].admin_up = true;
                derive_link_state(idx);
                touch();
            });
            for (const orchestrator::PlannedLink& l : plan.deactivate)
                derive_link_state(cand_index.at({l.a, l.b}));
            active_set = plan.target;
        }

        // Flow markers for the event log.
        TimeNs epoch_end = std::min<TimeNs>(engine.now() + sc.orchestration.epoch_ns, sc.duration_ns);
        for (const auto& [pair, bps] : current_tm.entries()) {
            std::string detail = std::to_string(pair.first) + "->" + std::to_string(pair.second) +
                                 " " + util::format_double(bps);
            engine.schedule(engine.now(), EventKind::FlowStart, detail);
            engine.schedule(epoch_end, EventKind::FlowEnd, detail);
        }

        touch();

        TimeNs next = engine.now() + sc.orchestration.epoch_ns;
        if (next < sc.duration_ns) {
            std::uint64_t next_epoch = epoch + 1;
            engine.schedule(next, EventKind::ReconfigEpoch, "epoch " + std::to_string(next_epoch),
                            [this, next_epoch](simcore::SimEngine&) { on_epoch(next_epoch); });
        }
    }

    void on_blockage_on(std::size_t i) {
        integrate(engine.now());
        LinkKey key = key_of(i);

        // Bits stranded during the steering gap, unless the twin drained
        // the link ahead of time.
        bool predicted = dyn[i].draining;
        if (!predicted && dyn[i].admin_up) {
            auto it = thz_util.find(key);
            if (it != thz_util.end() && it->second > 0) {
                const fabric::Link& l = topo.link(cand_link_ids[i]);
                double carried_bps = std::min(it->second, 1.0) * l.rate_bps;
                double lost = carried_bps * sc.orchestration.steering_delay_ns * 1e-9;
                lost_bits += lost;
                lost_by_link[key] += lost;
            }
        }

        dyn[i].obstructed = true;
        dyn[i].degraded = false;
        derive_link_state(i);

        TimeNs off_at = engine.now() +
                        static_cast<TimeNs>(std::llround(dynamics_rng.exponential(
                            static_cast<double>(sc.blockage.mean_blocked_ns))));
        engine.schedule(off_at, EventKind::BlockageOff, key_name(key),
                        [this, i](simcore::SimEngine&) { on_blockage_off(i); });
        next_blockage_on.erase(key);
        touch();
    }

    void on_blockage_off(std::size_t i) {
        integrate(engine.now());
        dyn[i].obstructed = false;
        dyn[i].degraded = false;
        dyn[i].draining = false;
        derive_link_state(i);

        TimeNs on_at = engine.now() +
                       static_cast<TimeNs>(std::llround(dynamics_rng.exponential(
                           static_cast<double>(sc.blockage.mean_clear_ns))));
        schedule_blockage_on(i, on_at);
        touch();
    }

    void on_resteer(std::size_t i) {
        integrate(engine.now());
        if (dyn[i].obstructed && dyn[i].admin_up) {
            dyn[i].degraded = true;
            derive_link_state(i);
        }
        touch();
    }

    RunOutputs finish() {
        engine.run_until(sc.duration_ns);
        integrate(sc.duration_ns);

        RunOutputs out;
        out.scenario_digest = sc.digest();
        out.seed = sc.seed;
        out.offered_bits = offered_bits;
        out.served_bits = std::max(0.0, served_bits - lost_bits);
        out.lost_bits = lost_bits;
        out.served_fraction = offered_bits > 0 ? out.served_bits / offered_bits : 1.0;
        out.mean_latency_ns =
            latency_weight_sum > 0 ? latency_weighted_sum / latency_weight_sum : 0.0;
        out.reconfig_count = reconfig_count;

        std::sort(latency_samples.begin(), latency_samples.end(),
                  [](const auto& a, const auto& b) { return a.second < b.second; });
        auto percentile = [&](double q) {
            double target = q * latency_weight_sum;
            double acc = 0;
            for (const auto& [w, lat] : latency_samples) {
                acc += w;
                if (acc >= target) return lat;
            }
            return latency_samples.empty() ? 0.0 : latency_samples.back().second;
        };
        out.p50_latency_ns = percentile(0.50);
        out.p99_latency_ns = percentile(0.99);

        for (const auto& [medium, joules] : energy_j) {
            double bits = bits_by_medium[medium];
            if (bits > 0) out.energy_pj_per_bit_by_medium[medium] = joules / bits * 1e12;
        }
        for (const auto& [key, ns] : blocked_ns) out.blocked_ns_by_link[key_name(key)] = ns;
        for (const auto& [key, bits] : lost_by_link) out.lost_bits_by_link[key_name(key)] = bits;

        std::ostringstream events;
        engine.write_event_log_csv(events);
        out.event_log_csv = events.str();
        out.reconfig_log_csv = reconfig_log.str();
        return out;
    }
};

}  // namespace

std::string RunOutputs::metrics_json() const {
    std::ostringstream out;
    auto d = util::format_double;
    out << "{\n";
    out << "  \"scenario_digest\": \"" << scenario_digest << "\",\n";
    out << "  \"seed\": " << seed << ",\n";
    out << "  \"served_fraction\": " << d(served_fraction) << ",\n";
    out << "  \"mean_latency_ns\": " << d(mean_latency_ns) << ",\n";
    out << "  \"p50_latency_ns\": " << d(p50_latency_ns) << ",\n";
    out << "  \"p99_latency_ns\": " << d(p99_latency_ns) << ",\n";
    out << "  \"reconfig_count\": " << reconfig_count << ",\n";
    out << "  \"offered_bits\": " << d(offered_bits) << ",\n";
    out << "  \"served_bits\": " << d(served_bits) << ",\n";
    out << "  \"lost_bits\": " << d(lost_bits) << ",\n";
    out << "  \"energy_pj_per_bit\": {";
    bool first = true;
    for (const auto& [medium, pj] : energy_pj_per_bit_by_medium) {
        if (!first) out << ", ";
        out << "\"" << medium << "\": " << d(pj);
        first = false;
    }
    out << "},\n  \"blocked_ns\": {";
    first = true;
    for (const auto& [link, ns] : blocked_ns_by_link) {
        if (!first) out << ", ";
        out << "\"" << link << "\": " << d(ns);
        first = false;
    }
    out << "},\n  \"lost_bits_by_link\": {";
    first = true;
    for (const auto& [link, bits] : lost_bits_by_link) {
        if (!first) out << ", ";
        out << "\"" << link << "\": " << d(bits);
        first = false;
    }
    out << "}\n}\n";
    return out.str();
}

std::string RunOutputs::output_digest() const {
    return util::fnv1a64_hex(metrics_json() + event_log_csv + reconfig_log_csv);
}

RunOutputs run_scenario(const Scenario& scenario) {
    Driver driver(scenario);
    return driver.finish();
}

}  // namespace wdcsim::sim
