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

#include "wdcsim/costmodels/energy.hpp"

#include <cmath>
#include <stdexcept>

namespace wdcsim::costmodels {

channel::LinkBudget ThzEnergyModel::budget_template() const {
    channel::LinkBudget b;
    b.tx_gain_dbi = tx_gain_dbi;
    b.rx_gain_dbi = rx_gain_dbi;
    b.noise_figure_db = noise_figure_db;
    b.bandwidth_hz = bandwidth_hz;
    return b;
}

std::optional<double> thz_energy_per_bit_at_pl(const ThzEnergyModel& model, double path_loss_db,
                                               double rate_bps,
                                               const channel::RateCeiling& ceiling) {
    if (!(model.static_power_w > 0)) throw std::invalid_argument("thz_energy: static power must be > 0");
    if (!(model.pa_efficiency > 0 && model.pa_efficiency <= 1))
        throw std::invalid_argument("thz_energy: pa_efficiency outside (0, 1]");
    if (!(rate_bps > 0) || rate_bps > ceiling.bps())
        throw std::invalid_argument("thz_energy: rate outside (0, ceiling]");

    double ptx_dbm = channel::required_tx_power_at_pl_dbm(rate_bps, model.budget_template(),
                                                          path_loss_db, ceiling);
    if (ptx_dbm > model.pa_max_dbm) return std::nullopt;
    double pa_rf_w = std::pow(10.0, (ptx_dbm - 30.0) / 10.0);
    return (model.static_power_w + pa_rf_w / model.pa_efficiency) / rate_bps;
}

std::optional<double> thz_energy_per_bit(const ThzEnergyModel& model,
                                         const channel::PathLossModel& plm, double distance_m,
                                         double rate_bps, const channel::RateCeiling& ceiling) {
    double pl = plm.kind == channel::PathLossModel::Kind::FreeSpace
                    ? channel::free_space_path_loss_db(distance_m, plm.carrier_freq_hz)
                    : channel::path_loss_db(plm, std::max(distance_m, plm.d0_m));
    return thz_energy_per_bit_at_pl(model, pl, rate_bps, ceiling);
}

double optical_energy_per_bit(const OpticalEnergyModel& model, int hops) {
    if (hops < 0) throw std::invalid_argument("optical_energy: negative hop count");
    return model.module_power_w / model.module_rate_bps + hops * model.switch_energy_j_per_bit;
}

std::optional<double> copper_energy_per_bit(const CopperEnergyModel& model, double distance_m,
                                            double rate_bps) {
    if (!(rate_bps > 0)) throw std::invalid_argument("copper_energy: rate must be positive");
    if (distance_m > model.max_reach_m) return std::nullopt;
    return rate_bps > model.equalization_threshold_bps ? model.equalized_j_per_bit
                                                       : model.base_j_per_bit;
}

}  // namespace wdcsim::costmodels
