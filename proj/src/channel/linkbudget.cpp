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

#include "wdcsim/channel/linkbudget.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace wdcsim::channel {

double LinkBudget::rx_power_dbm() const {
    return tx_power_dbm + tx_gain_dbi + rx_gain_dbi - path_loss_db;
}

double LinkBudget::noise_floor_dbm() const {
    return -174.0 + 10.0 * std::log10(bandwidth_hz) + noise_figure_db;
}

double LinkBudget::snr_db() const {
    return rx_power_dbm() - noise_floor_dbm();
}

double achievable_rate_bps(const LinkBudget& budget, const RateCeiling& ceiling) {
    if (!(budget.bandwidth_hz > 0))
        throw std::invalid_argument("achievable_rate: bandwidth must be positive");
    double snr_linear = std::pow(10.0, budget.snr_db() / 10.0);
    double shannon = budget.bandwidth_hz * std::log2(1.0 + snr_linear);
    return std::min(shannon, ceiling.bps());
}

double required_tx_power_at_pl_dbm(double target_rate_bps, const LinkBudget& budget_template,
                                   double path_loss_db, const RateCeiling& ceiling) {
    if (!(budget_template.bandwidth_hz > 0))
        throw std::invalid_argument("required_tx_power: bandwidth must be positive");
    if (!(target_rate_bps > 0) || target_rate_bps > ceiling.bps())
        throw std::invalid_argument("required_tx_power: target rate outside (0, ceiling]");
    double snr_req_linear = std::pow(2.0, target_rate_bps / budget_template.bandwidth_hz) - 1.0;
    double snr_req_db = 10.0 * std::log10(snr_req_linear);
    return snr_req_db + budget_template.noise_floor_dbm() -
           (budget_template.tx_gain_dbi + budget_template.rx_gain_dbi) + path_loss_db;
}

double required_tx_power_dbm(double target_rate_bps, const LinkBudget& budget_template,
                             const PathLossModel& model, double distance_m,
                             const RateCeiling& ceiling) {
    // Free-space stays a pure Friis law below the reference distance; the
    // close-in law is only defined from d0 outward.
    double pl = model.kind == PathLossModel::Kind::FreeSpace
                    ? free_space_path_loss_db(distance_m, model.carrier_freq_hz)
                    : path_loss_db(model, std::max(distance_m, model.d0_m));
    return required_tx_power_at_pl_dbm(target_rate_bps, budget_template, pl, ceiling);
}

std::string link_budget_report_json(const LinkBudget& budget, const RateCeiling& ceiling) {
    nlohmann::ordered_json j;
    j["tx_power_dbm"] = budget.tx_power_dbm;
    j["tx_gain_dbi"] = budget.tx_gain_dbi;
    j["rx_gain_dbi"] = budget.rx_gain_dbi;
    j["path_loss_db"] = budget.path_loss_db;
    j["noise_figure_db"] = budget.noise_figure_db;
    j["bandwidth_hz"] = budget.bandwidth_hz;
    j["rx_power_dbm"] = budget.rx_power_dbm();
    j["noise_floor_dbm"] = budget.noise_floor_dbm();
    j["snr_db"] = budget.snr_db();
    j["achievable_rate_bps"] = achievable_rate_bps(budget, ceiling);
    return j.dump(2);
}

}  // namespace wdcsim::channel
