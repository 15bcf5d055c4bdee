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

#include "wdcsim/orchestrator/matching.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "wdcsim/util/errors.hpp"

namespace wdcsim::orchestrator {

void Objective::validate() const {
    if (kind != Kind::Balanced) return;
    if (bandwidth_weight < 0 || latency_weight < 0 ||
        std::abs(bandwidth_weight + latency_weight - 1.0) > 1e-9)
        throw std::invalid_argument("Objective: balanced weights must be non-negative and sum to 1");
}

const char* to_string(Objective::Kind k) {
    switch (k) {
        case Objective::Kind::Bandwidth: return "bandwidth";
        case Objective::Kind::Latency: return "latency";
        case Objective::Kind::Balanced: return "balanced";
    }
    return "?";
}

namespace {

bool rank_before(const ScoredEdge& x, const ScoredEdge& y) {
    if (x.weight != y.weight) return x.weight > y.weight;
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
}

struct Searcher {
    std::span<const ScoredEdge> edges;  // in rank order
    std::vector<int> caps;
    std::uint64_t budget;
    std::vector<double> suffix_sum;               // over all remaining edges
    std::vector<std::vector<std::size_t>> incident;  // per vertex, edge indices in rank order

    std::uint64_t visited = 0;
    bool completed = true;
    double best_weight = 0;
    std::vector<std::size_t> best_set;
    std::vector<std::size_t> chosen;

    // Upper bound on what the suffix from `i` can still add: each vertex
    // contributes at most its top cap_v remaining incident weights, and
    // every edge is counted from both endpoints, so halve the total. The
    // plain suffix sum is a second valid bound; take the smaller.
    double bound(std::size_t i) const {
        double vertex_total = 0;
        for (std::size_t v = 0; v < caps.size(); ++v) {
            int take = caps[v];
            if (take <= 0) continue;
            for (std::size_t e : incident[v]) {
                if (e < i) continue;
                vertex_total += edges[e].weight;
                if (--take == 0) break;
            }
        }
        return std::min(suffix_sum[i], 0.5 * vertex_total);
    }

    void dfs(std::size_t i, double weight) {
        if (visited >= budget) {
            completed = false;
            return;
        }
        ++visited;
        if (weight > best_weight) {
            best_weight = weight;
            best_set = chosen;
        }
        if (i >= edges.size()) return;
        if (weight + bound(i) <= best_weight + 1e-12) return;

        const ScoredEdge& e = edges[i];
        auto a = static_cast<std::size_t>(e.a);
        auto b = static_cast<std::size_t>(e.b);
        if (caps[a] > 0 && caps[b] > 0) {
            --caps[a];
            --caps[b];
            chosen.push_back(i);
            dfs(i + 1, weight + e.weight);
            chosen.pop_back();
            ++caps[a];
            ++caps[b];
        }
        dfs(i + 1, weight);
    }
};

}  // namespace

MatchingResult max_weight_b_matching(std::span<const ScoredEdge> edges, std::span<const int> caps,
                                     const MatchingOptions& options) {
    std::vector<ScoredEdge> ranked(edges.begin(), edges.end());
    for (const ScoredEdge& e : ranked) {
        if (e.a >= e.b) throw std::invalid_argument("b_matching: edges must have a < b");
        if (e.b >= static_cast<int>(caps.size()))
            throw std::invalid_argument("b_matching: vertex beyond capacity table");
        if (!(e.weight > 0)) throw std::invalid_argument("b_matching: weights must be positive");
    }
    std::sort(ranked.begin(), ranked.end(), rank_before);

    MatchingResult result;

    // Greedy pass: admit in rank order while both endpoints have radios.
    std::vector<int> greedy_caps(caps.begin(), caps.end());
    std::vector<std::size_t> greedy_set;
    double greedy_weight = 0;
    for (std::size_t i = 0; i < ranked.size(); ++i) {
        auto a = static_cast<std::size_t>(ranked[i].a);
        auto b = static_cast<std::size_t>(ranked[i].b);
        if (greedy_caps[a] > 0 && greedy_caps[b] > 0) {
            --greedy_caps[a];
            --greedy_caps[b];
            greedy_set.push_back(i);
            greedy_weight += ranked[i].weight;
        }
    }
    result.greedy_weight = greedy_weight;

    Searcher s;
    s.edges = ranked;
    s.caps.assign(caps.begin(), caps.end());
    s.budget = std::max<std::uint64_t>(options.node_budget, 1);
    s.suffix_sum.assign(ranked.size() + 1, 0.0);
    for (std::size_t i = ranked.size(); i-- > 0;)
        s.suffix_sum[i] = s.suffix_sum[i + 1] + ranked[i].weight;
    s.incident.assign(caps.size(), {});
    for (std::size_t i = 0; i < ranked.size(); ++i) {
        s.incident[static_cast<std::size_t>(ranked[i].a)].push_back(i);
        s.incident[static_cast<std::size_t>(ranked[i].b)].push_back(i);
    }
    s.best_weight = greedy_weight;
    s.best_set = greedy_set;
    s.dfs(0, 0.0);

    result.weight = s.best_weight;
    result.search_completed = s.completed;
    result.selected.reserve(s.best_set.size());
    for (std::size_t i : s.best_set) result.selected.push_back(ranked[i].candidate_index);
    std::sort(result.selected.begin(), result.selected.end());
    return result;
}

ReconfigPlan select_links(const SelectInputs& in) {
    in.objective.validate();
    if (!in.traffic) throw std::invalid_argument("select_links: traffic matrix required");
    if ((in.objective.kind == Objective::Kind::Latency ||
         in.objective.kind == Objective::Kind::Balanced) &&
        in.latency_saved_ns.size() != in.candidates.size())
        throw std::invalid_argument("select_links: latency objective needs per-candidate savings");

    // Score candidates; zero-weight edges drop out.
    std::vector<double> bw_score(in.candidates.size(), 0.0);
    std::vector<double> lat_score(in.candidates.size(), 0.0);
    double bw_max = 0, lat_max = 0;
    for (std::size_t i = 0; i < in.candidates.size(); ++i) {
        const fabric::CandidateLink& c = in.candidates[i];
        double demand = in.traffic->at(c.rack_a, c.rack_b) + in.traffic->at(c.rack_b, c.rack_a);
        if (demand <= 0 || c.rate_bps <= 0) continue;
        bw_score[i] = std::min(demand, c.rate_bps);
        if (!in.latency_saved_ns.empty())
            lat_score[i] = demand * std::max(0.0, in.latency_saved_ns[i]);
        bw_max = std::max(bw_max, bw_score[i]);
        lat_max = std::max(lat_max, lat_score[i]);
    }

    std::vector<ScoredEdge> edges;
    for (std::size_t i = 0; i < in.candidates.size(); ++i) {
        double w = 0;
        switch (in.objective.kind) {
            case Objective::Kind::Bandwidth: w = bw_score[i]; break;
            case Objective::Kind::Latency: w = lat_score[i]; break;
            case Objective::Kind::Balanced: {
                double nb = bw_max > 0 ? bw_score[i] / bw_max : 0.0;
                double nl = lat_max > 0 ? lat_score[i] / lat_max : 0.0;
                w = in.objective.bandwidth_weight * nb + in.objective.latency_weight * nl;
                break;
            }
        }
        if (w > 0)
            edges.push_back(ScoredEdge{in.candidates[i].rack_a, in.candidates[i].rack_b, w, i});
    }

    ReconfigPlan plan;
    plan.steering_delay_ns = in.steering_delay_ns;
    plan.epoch_id = in.epoch_id;
    if (!edges.empty()) {
        MatchingResult match = max_weight_b_matching(edges, in.radio_caps, in.options);
        plan.matched_weight = match.weight;
        for (std::size_t idx : match.selected)
            plan.target.push_back(PlannedLink{in.candidates[idx].rack_a, in.candidates[idx].rack_b});
        std::sort(plan.target.begin(), plan.target.end());
    }

    std::set<PlannedLink> current(in.currently_active.begin(), in.currently_active.end());
    std::set<PlannedLink> target(plan.target.begin(), plan.target.end());
    for (const PlannedLink& l : plan.target)
        if (!current.contains(l)) plan.activate.push_back(l);
    for (const PlannedLink& l : current)
        if (!target.contains(l)) plan.deactivate.push_back(l);
    return plan;
}

std::vector<simcore::EventId> apply_plan(fabric::Topology& topology, const ReconfigPlan& plan,
                                         simcore::SimEngine& engine,
                                         std::function<void(const PlannedLink&)> on_usable) {
    for (const PlannedLink& l : plan.activate)
        for (const PlannedLink& d : plan.deactivate)
            if (l == d) throw InvariantViolation("apply_plan: link both activated and deactivated");

    // Post-plan degree check before touching anything.
    std::map<int, int> degree;
    for (const fabric::Rack& r : topology.racks()) degree[r.id] = topology.active_thz_degree(r.id);
    for (const PlannedLink& l : plan.deactivate) {
        const fabric::Link* link = topology.find_thz_link(l.a, l.b);
        if (!link || link->state == fabric::LinkState::Inactive)
            throw InvariantViolation("apply_plan: deactivating a link that is not up");
        --degree[l.a];
        --degree[l.b];
    }
    for (const PlannedLink& l : plan.activate) {
        if (!topology.find_thz_link(l.a, l.b))
            throw InvariantViolation("apply_plan: activating an unknown candidate link");
        ++degree[l.a];
        ++degree[l.b];
    }
    for (const fabric::Rack& r : topology.racks())
        if (degree[r.id] > r.radio_count)
            throw InvariantViolation("apply_plan: plan exceeds radio capacity at rack " +
                                     std::to_string(r.id));

    for (const PlannedLink& l : plan.deactivate)
        topology.find_thz_link(l.a, l.b)->state = fabric::LinkState::Inactive;

    std::vector<simcore::EventId> events;
    simcore::TimeNs usable_at =
        engine.now() + static_cast<simcore::TimeNs>(std::llround(plan.steering_delay_ns));
    for (const PlannedLink& l : plan.activate) {
        std::string detail = "activate " + std::to_string(l.a) + "-" + std::to_string(l.b);
        events.push_back(engine.schedule(
            usable_at, simcore::EventKind::ReconfigEpoch, std::move(detail),
            [&topology, l, on_usable](simcore::SimEngine&) {
                if (fabric::Link* link = topology.find_thz_link(l.a, l.b);
                    link && link->state == fabric::LinkState::Inactive) {
                    link->state = fabric::LinkState::Active;
                    if (on_usable) on_usable(l);
                }
            }));
    }
    return events;
}

}  // namespace wdcsim::orchestrator
