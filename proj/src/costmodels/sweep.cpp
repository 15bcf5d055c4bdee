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

#include "wdcsim/costmodels/sweep.hpp"

#include <stdexcept>

#include "wdcsim/util/text.hpp"

namespace wdcsim::costmodels {

const char* to_string(SweepAxis a) {
    return a == SweepAxis::Distance ? "distance" : "rate";
}

namespace {

SweepRow evaluate_point(SweepAxis axis, double axis_value, Medium medium,
                        const SweepModels& m) {
    double distance = axis == SweepAxis::Distance ? axis_value : m.fixed_distance_m;
    double rate = axis == SweepAxis::Rate ? axis_value : m.fixed_rate_bps;

    SweepRow row{axis, axis_value, medium, std::nullopt, std::nullopt, false};
    switch (medium) {
        case Medium::Thz: {
            row.energy_j_per_bit = thz_energy_per_bit(m.thz, m.path_loss, distance, rate, m.ceiling);
            if (row.energy_j_per_bit)
                row.latency_ns = link_latency(Medium::Thz, distance, rate, m.frame_bits, 0,
                                              m.latency).total_ns();
            break;
        }
        case Medium::Optical: {
            row.energy_j_per_bit = optical_energy_per_bit(m.optical, m.optical_hops);
            row.latency_ns = link_latency(Medium::Optical, distance, rate, m.frame_bits,
                                          m.optical_hops, m.latency).total_ns();
            break;
        }
        case Medium::Copper: {
            row.energy_j_per_bit = copper_energy_per_bit(m.copper, distance, rate);
            if (row.energy_j_per_bit)
                row.latency_ns = link_latency(Medium::Copper, distance, rate, m.frame_bits, 0,
                                              m.latency).total_ns();
            break;
        }
    }
    row.feasible = row.energy_j_per_bit.has_value();
    return row;
}

}  // namespace

std::vector<SweepRow> sweep(SweepAxis axis, std::span<const double> grid,
                            std::span<const Medium> media, const SweepModels& models) {
    if (grid.empty()) throw std::invalid_argument("sweep: empty grid");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1])) throw std::invalid_argument("sweep: grid must be strictly increasing");
    if (media.empty()) throw std::invalid_argument("sweep: no media selected");

    std::vector<SweepRow> rows;
    rows.reserve(grid.size() * media.size());
    for (double v : grid)
        for (Medium medium : media) rows.push_back(evaluate_point(axis, v, medium, models));
    return rows;
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
    out << "axis,axis_value,medium,energy_pj_per_bit,latency_ns,feasible\n";
    for (const SweepRow& r : rows) {
        out << to_string(r.axis) << ',' << util::format_double(r.axis_value) << ','
            << to_string(r.medium) << ',';
        if (r.energy_j_per_bit) out << util::format_double(*r.energy_j_per_bit * 1e12);
        out << ',';
        if (r.latency_ns) out << util::format_double(*r.latency_ns);
        out << ',' << (r.feasible ? 1 : 0) << '\n';
    }
}

SweepSummary summarize_sweep(std::span<const SweepRow> rows, const SweepModels& models) {
    SweepSummary s;
    double optical_base = optical_energy_per_bit(models.optical, 0);
    for (const SweepRow& r : rows) {
        if (r.medium != Medium::Thz || !r.energy_j_per_bit) continue;
        if (r.axis == SweepAxis::Distance && !s.thz_crossover_distance_m &&
            *r.energy_j_per_bit > optical_base)
            s.thz_crossover_distance_m = r.axis_value;
        if (r.axis == SweepAxis::Rate &&
            (!s.thz_min_energy_j_per_bit || *r.energy_j_per_bit < *s.thz_min_energy_j_per_bit)) {
            s.thz_min_energy_j_per_bit = r.energy_j_per_bit;
            s.thz_sweet_rate_bps = r.axis_value;
        }
    }
    return s;
}

}  // namespace wdcsim::costmodels
