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

#include <string>

#include "wdcsim/channel/pathloss.hpp"

namespace wdcsim::channel {

/// Hardware rate ceiling. Dual-polarization / multi-band aggregation is
/// folded in as a multiplier on the per-polarization cap rather than as
/// separate physical channels.
struct RateCeiling {
    double per_polarization_bps = 500e9;
    double polarization_factor = 2.0;

    double bps() const { return per_polarization_bps * polarization_factor; }
};

/// One-link power accounting: rx power, noise floor, and SNR follow from
/// the stored terms, so the derived quantities are methods rather than
/// stored fields and the identity
///   rx = tx + g_tx + g_rx - pl,  snr = rx - (-174 + 10*log10(B) + NF)
/// holds by construction.
struct LinkBudget {
    double tx_power_dbm = 20.0;
    double tx_gain_dbi = 20.0;
    double rx_gain_dbi = 20.0;
    double path_loss_db = 0.0;
    double noise_figure_db = 10.0;
    double bandwidth_hz = 20e9;

    double rx_power_dbm() const;
    double noise_floor_dbm() const;
    double snr_db() const;
};

/// Shannon rate B*log2(1+snr), clamped at the hardware ceiling.
/// Throws std::invalid_argument when bandwidth is not positive.
double achievable_rate_bps(const LinkBudget& budget, const RateCeiling& ceiling = {});

/// Inverse link budget: the tx power making achievable_rate == target at
/// the given distance under `model`. The template supplies gains, noise
/// figure, and bandwidth; its tx power and path loss are ignored.
/// Throws std::invalid_argument for a target above the ceiling.
double required_tx_power_dbm(double target_rate_bps, const LinkBudget& budget_template,
                             const PathLossModel& model, double distance_m,
                             const RateCeiling& ceiling = {});

/// Same inversion against an explicit path loss (already including any
/// shadowing or obstruction terms).
double required_tx_power_at_pl_dbm(double target_rate_bps, const LinkBudget& budget_template,
                                   double path_loss_db, const RateCeiling& ceiling = {});

/// JSON report with every budget field plus the achievable rate.
std::string link_budget_report_json(const LinkBudget& budget, const RateCeiling& ceiling = {});

}  // namespace wdcsim::channel
