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

#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "wdcsim/channel/pathloss.hpp"
#include "wdcsim/simcore/rng.hpp"

namespace wdcsim::padp {

/// Angular grid of the directional sounder: azimuth 0..355 deg and
/// zenith -20..20 deg, both in 5 deg steps.
inline constexpr double kAngleStepDeg = 5.0;
inline constexpr double kAzimuthMaxDeg = 355.0;
inline constexpr double kZenithMinDeg = -20.0;
inline constexpr double kZenithMaxDeg = 20.0;

/// Default delay resolution implied by a 20 GHz sounding span, and a
/// conventional receiver floor. Both are assumptions, exposed as knobs.
inline constexpr double kDefaultDelayBinNs = 0.05;
inline constexpr double kDefaultNoiseFloorDbm = -120.0;

/// One cell of a power-angle-delay profile.
struct PadpRecord {
    double azimuth_deg;
    double zenith_deg;
    double delay_ns;
    double power_dbm;
};

/// An extracted multipath component (a local power maximum).
struct Mpc {
    double delay_ns;
    double azimuth_deg;
    double zenith_deg;
    double power_dbm;
};

/// Fitted close-in model parameters plus fit diagnostics.
struct FitResult {
    double pl0_db;
    double exponent_n;
    double shadow_sigma_db;
    std::vector<double> residuals_db;
    std::size_t point_count;
    bool anchored;

    std::string to_json() const;
};

/// Parses the normative CSV (header azimuth_deg,zenith_deg,delay_ns,power_dbm).
/// Throws std::invalid_argument naming the 1-based line on malformed rows,
/// off-grid angles, or negative delays. An empty body yields an empty set.
std::vector<PadpRecord> parse_padp(std::istream& in);

/// Serializes records in the same normative format (LF endings).
void write_padp_csv(std::ostream& out, std::span<const PadpRecord> records);

/// Local maxima over the (azimuth, zenith, delay-bin) grid that clear
/// noise_floor + threshold, sorted by descending power. Azimuth wraps.
/// Output powers are a subset of input powers (no interpolation).
std::vector<Mpc> extract_mpcs(std::span<const PadpRecord> records, double noise_floor_dbm,
                              double threshold_db, double delay_bin_ns = kDefaultDelayBinNs);

struct PathLossPoint {
    double distance_m;
    double path_loss_db;
};

/// Least-squares close-in fit over (distance, path loss) points.
/// With `anchored_pl0` set, only the exponent is fitted and pl0 is pinned
/// (typically to the Friis value at d0). Requires >= 2 distinct distances;
/// throws std::invalid_argument("degenerate fit") otherwise.
FitResult fit_close_in(std::span<const PathLossPoint> points, double d0_m = 1.0,
                       std::optional<double> anchored_pl0 = std::nullopt);

/// A synthetic multipath component relative to the direct path.
struct SyntheticMpc {
    double azimuth_deg;
    double zenith_deg;
    double delay_offset_ns;   // > 0: arrives after the direct path
    double power_below_direct_db;  // > 0: weaker than the direct path
};

/// Ground truth for the synthetic sounder. Powers are EIRP-normalized:
/// the direct-path cell carries -PL(d) dBm (plus the per-position shadow
/// draw), so path loss is recoverable from the file alone and distance
/// is encoded in the direct-path delay.
struct SyntheticTruth {
    channel::PathLossModel model;
    std::vector<SyntheticMpc> extra_paths;
    double noise_floor_dbm = kDefaultNoiseFloorDbm;
    double delay_bin_ns = kDefaultDelayBinNs;
    int noise_cells = 24;
};

/// Snaps a distance onto the delay grid so delay quantization cannot
/// perturb a noiseless fit.
double snap_distance_to_delay_grid(double distance_m, double delay_bin_ns = kDefaultDelayBinNs);

/// One measurement file (CSV text) at the given (snapped) distance.
/// Deterministic given the stream state.
std::string generate_synthetic_padp(const SyntheticTruth& truth, double distance_m,
                                    simcore::RngStream& stream);

/// Bridges a parsed PADP to a fit point: the strongest extracted MPC is
/// the direct path; its delay gives the distance and its power gives the
/// path loss (PL = eirp - power). Throws when no MPC clears the threshold.
PathLossPoint point_from_padp(std::span<const PadpRecord> records, double noise_floor_dbm,
                              double threshold_db, double eirp_dbm = 0.0,
                              double delay_bin_ns = kDefaultDelayBinNs);

}  // namespace wdcsim::padp
