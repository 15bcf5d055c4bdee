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
#include <ostream>
#include <span>
#include <vector>

#include "wdcsim/costmodels/energy.hpp"
#include "wdcsim/costmodels/latency.hpp"

namespace wdcsim::costmodels {

enum class SweepAxis { Distance, Rate };

const char* to_string(SweepAxis a);

/// Everything a grid evaluation needs; the non-swept quantity is pinned
/// by fixed_distance_m / fixed_rate_bps.
struct SweepModels {
    channel::PathLossModel path_loss = channel::PathLossModel::free_space(300e9);
    ThzEnergyModel thz;
    OpticalEnergyModel optical;
    CopperEnergyModel copper;
    LatencyParams latency;
    channel::RateCeiling ceiling;
    double frame_bits = 12000.0;
    int optical_hops = 0;
    double fixed_distance_m = 10.0;
    double fixed_rate_bps = 400e9;
};

struct SweepRow {
    SweepAxis axis;
    double axis_value;
    Medium medium;
    std::optional<double> energy_j_per_bit;  // nullopt when infeasible
    std::optional<double> latency_ns;
    bool feasible;
};

/// One row per (grid point x medium); infeasible points flagged, never
/// omitted. The grid must be non-empty and strictly increasing.
std::vector<SweepRow> sweep(SweepAxis axis, std::span<const double> grid,
                            std::span<const Medium> media, const SweepModels& models);

/// CSV: header `axis,axis_value,medium,energy_pj_per_bit,latency_ns,feasible`.
/// Energy is reported in picojoules; empty cells mark infeasible points.
void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);

struct SweepSummary {
    std::optional<double> thz_crossover_distance_m;  // first grid d where THz > switchless optical
    std::optional<double> thz_sweet_rate_bps;        // rate-axis energy argmin
    std::optional<double> thz_min_energy_j_per_bit;
};

SweepSummary summarize_sweep(std::span<const SweepRow> rows, const SweepModels& models);

}  // namespace wdcsim::costmodels
