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

#include "wdcsim/channel/pathloss.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wdcsim::channel {

double free_space_path_loss_db(double distance_m, double freq_hz) {
    if (!(distance_m > 0)) throw std::domain_error("free_space_path_loss: distance must be positive");
    if (!(freq_hz > 0)) throw std::domain_error("free_space_path_loss: frequency must be positive");
    return 20.0 * std::log10(4.0 * std::numbers::pi * distance_m * freq_hz / kSpeedOfLightMps);
}

PathLossModel PathLossModel::free_space(double carrier_freq_hz) {
    PathLossModel m;
    m.kind = Kind::FreeSpace;
    m.carrier_freq_hz = carrier_freq_hz;
    m.pl0_db = free_space_path_loss_db(m.d0_m, carrier_freq_hz);
    m.exponent_n = 2.0;
    m.shadow_sigma_db = 0.0;
    m.validate();
    return m;
}

PathLossModel PathLossModel::close_in(double carrier_freq_hz, double pl0_db, double exponent_n,
                                      double shadow_sigma_db) {
    PathLossModel m;
    m.kind = Kind::CloseIn;
    m.carrier_freq_hz = carrier_freq_hz;
    m.pl0_db = pl0_db;
    m.exponent_n = exponent_n;
    m.shadow_sigma_db = shadow_sigma_db;
    m.validate();
    return m;
}

void PathLossModel::validate() const {
    if (!(carrier_freq_hz >= 0.1e12 && carrier_freq_hz <= 1.0e12))
        throw std::invalid_argument("PathLossModel: carrier frequency outside [0.1, 1] THz");
    if (!(exponent_n > 0)) throw std::invalid_argument("PathLossModel: exponent must be positive");
    if (!(shadow_sigma_db >= 0)) throw std::invalid_argument("PathLossModel: shadow sigma must be >= 0");
    if (kind == Kind::FreeSpace) {
        double friis = free_space_path_loss_db(d0_m, carrier_freq_hz);
        if (std::abs(pl0_db - friis) > 1e-9 || exponent_n != 2.0)
            throw std::invalid_argument("PathLossModel: free-space form requires pl0 = Friis(d0), n = 2");
    }
}

double path_loss_db(const PathLossModel& model, double distance_m,
                    std::optional<double> shadow_draw) {
    if (!(distance_m >= model.d0_m))
        throw std::domain_error("path_loss: distance below reference distance d0");
    double pl = model.pl0_db + 10.0 * model.exponent_n * std::log10(distance_m / model.d0_m);
    if (shadow_draw) pl += model.shadow_sigma_db * *shadow_draw;
    return pl;
}

}  // namespace wdcsim::channel
