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

#include "wdcsim/channel/linkbudget.hpp"
#include "wdcsim/channel/pathloss.hpp"

namespace wdcsim::costmodels {

/// THz transceiver energy: a static term (LO, mixers, bias) plus the PA
/// draw needed to close the link budget at the requested rate. Digital
/// baseband energy is excluded by construction. The bandwidth here is
/// the multi-band aggregate the transceiver can mobilize, independent of
/// the single measured band a channel model may describe.
struct ThzEnergyModel {
    double static_power_w = 0.06;
    double pa_efficiency = 0.12;   // RF out / DC in, in (0, 1]
    double bandwidth_hz = 200e9;
    double pa_max_dbm = 40.0;      // feasibility cap on RF output
    double tx_gain_dbi = 20.0;
    double rx_gain_dbi = 20.0;
    double noise_figure_db = 10.0;

    channel::LinkBudget budget_template() const;
};

/// Optical module energy: flat per-module cost plus a per-switch tax.
/// Distance-independent at data-center scale.
struct OpticalEnergyModel {
    double module_power_w = 12.5;
    double module_rate_bps = 400e9;
    double switch_energy_j_per_bit = 0.28e-9;
    double fiber_group_index = 1.468;
};

/// Copper energy: flat below the equalization threshold rate, higher
/// above it, infeasible beyond the reach limit.
struct CopperEnergyModel {
    double base_j_per_bit = 75e-12;
    double equalized_j_per_bit = 120e-12;
    double equalization_threshold_bps = 400e9;
    double max_reach_m = 5.0;
};

/// Joules per bit for a THz link at (distance, rate); nullopt when the
/// required PA output exceeds pa_max_dbm (infeasible marker).
/// Throws std::invalid_argument for rate outside (0, ceiling].
std::optional<double> thz_energy_per_bit(const ThzEnergyModel& model,
                                         const channel::PathLossModel& plm, double distance_m,
                                         double rate_bps, const channel::RateCeiling& ceiling = {});

/// Variant against an explicit path loss (shadowing / NLoS already folded in).
std::optional<double> thz_energy_per_bit_at_pl(const ThzEnergyModel& model, double path_loss_db,
                                               double rate_bps,
                                               const channel::RateCeiling& ceiling = {});

/// module_power/module_rate + hops * switch_energy. Distance-free.
double optical_energy_per_bit(const OpticalEnergyModel& model, int hops);

/// Base or equalized J/bit; nullopt beyond max reach.
std::optional<double> copper_energy_per_bit(const CopperEnergyModel& model, double distance_m,
                                            double rate_bps);

}  // namespace wdcsim::costmodels
