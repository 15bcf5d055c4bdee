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

namespace wdcsim::channel {

inline constexpr double kSpeedOfLightMps = 2.99792458e8;

/// Friis free-space path loss, 20*log10(4*pi*d*f/c) dB.
/// Throws std::domain_error for non-positive distance or frequency.
double free_space_path_loss_db(double distance_m, double freq_hz);

/// Large-scale path-loss law: free-space, or close-in (CI) with a fitted
/// exponent anchored at reference distance d0. Shadowing is a lognormal
/// term applied by the caller through an explicit standard-normal draw,
/// so the model itself stays a pure function.
struct PathLossModel {
    enum class Kind { FreeSpace, CloseIn };

    Kind kind = Kind::FreeSpace;
    double carrier_freq_hz = 300e9;
    double pl0_db = 0.0;   // path loss at d0
    double d0_m = 1.0;
    double exponent_n = 2.0;
    double shadow_sigma_db = 0.0;

    static PathLossModel free_space(double carrier_freq_hz);
    static PathLossModel close_in(double carrier_freq_hz, double pl0_db, double exponent_n,
                                  double shadow_sigma_db = 0.0);

    /// Enforces field invariants; throws std::invalid_argument on violation.
    void validate() const;
};

/// pl0 + 10*n*log10(d/d0) [+ sigma * draw].
/// Throws std::domain_error when distance < d0.
double path_loss_db(const PathLossModel& model, double distance_m,
                    std::optional<double> shadow_draw = std::nullopt);

}  // namespace wdcsim::channel
