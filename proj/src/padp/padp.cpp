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

#include "wdcsim/padp/padp.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "wdcsim/util/text.hpp"

namespace wdcsim::padp {

namespace {

bool on_grid(double value, double lo, double hi, double step) {
    if (value < lo - 1e-9 || value > hi + 1e-9) return false;
    double k = (value - lo) / step;
    return std::abs(k - std::round(k)) < 1e-6;
}

[[noreturn]] void row_error(std::size_t line, const std::string& what) {
    throw std::invalid_argument("padp row " + std::to_string(line) + ": " + what);
}

}  // namespace

std::vector<PadpRecord> parse_padp(std::istream& in) {
    std::vector<PadpRecord> out;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view text = util::trim(line);
        if (text.empty()) continue;
        if (!header_seen) {
            if (text != "azimuth_deg,zenith_deg,delay_ns,power_dbm")
                row_error(line_no, "missing or malformed header");
            header_seen = true;
            continue;
        }
        auto fields = util::split(text, ',');
        if (fields.size() != 4) row_error(line_no, "expected 4 fields, got " + std::to_string(fields.size()));
        PadpRecord r{};
        try {
            r.azimuth_deg = util::parse_double(fields[0], "azimuth_deg");
            r.zenith_deg = util::parse_double(fields[1], "zenith_deg");
            r.delay_ns = util::parse_double(fields[2], "delay_ns");
            r.power_dbm = util::parse_double(fields[3], "power_dbm");
        } catch (const std::invalid_argument& e) {
            row_error(line_no, e.what());
        }
        if (!on_grid(r.azimuth_deg, 0.0, kAzimuthMaxDeg, kAngleStepDeg))
            row_error(line_no, "azimuth " + util::format_double(r.azimuth_deg) + " off the 5-degree grid");
        if (!on_grid(r.zenith_deg, kZenithMinDeg, kZenithMaxDeg, kAngleStepDeg))
            row_error(line_no, "zenith " + util::format_double(r.zenith_deg) + " off the 5-degree grid");
        if (r.delay_ns < 0) row_error(line_no, "negative delay");
        out.push_back(r);
    }
    return out;
}

void write_padp_csv(std::ostream& out, std::span<const PadpRecord> records) {
    out << "azimuth_deg,zenith_deg,delay_ns,power_dbm\n";
    for (const PadpRecord& r : records)
        out << util::format_double(r.azimuth_deg) << ',' << util::format_double(r.zenith_deg) << ','
            << util::format_double(r.delay_ns) << ',' << util::format_double(r.power_dbm) << '\n';
}

std::vector<Mpc> extract_mpcs(std::span<const PadpRecord> records, double noise_floor_dbm,
                              double threshold_db, double delay_bin_ns) {
    if (!(threshold_db > 0)) throw std::invalid_argument("extract_mpcs: threshold must be positive");
    if (!(delay_bin_ns > 0)) throw std::invalid_argument("extract_mpcs: delay bin must be positive");

    // Index cells by integer grid coordinates; duplicates keep the max.
    using Cell = std::array<long, 3>;  // az step, zen step, delay bin
    std::map<Cell, const PadpRecord*> grid;
    const long az_cells = static_cast<long>(kAzimuthMaxDeg / kAngleStepDeg) + 1;  // 72
    for (const PadpRecord& r : records) {
        Cell c{static_cast<long>(std::llround(r.azimuth_deg / kAngleStepDeg)),
               static_cast<long>(std::llround((r.zenith_deg - kZenithMinDeg) / kAngleStepDeg)),
               static_cast<long>(std::llround(r.delay_ns / delay_bin_ns))};
        auto [it, inserted] = grid.emplace(c, &r);
        if (!inserted && r.power_dbm > it->second->power_dbm) it->second = &r;
    }

    double cutoff = noise_floor_dbm + threshold_db;
    std::vector<Mpc> out;
    for (const auto& [cell, rec] : grid) {
        if (rec->power_dbm < cutoff) continue;
        bool is_peak = true;
        for (long da = -1; da <= 1 && is_peak; ++da) {
            for (long dz = -1; dz <= 1 && is_peak; ++dz) {
                for (long dd = -1; dd <= 1 && is_peak; ++dd) {
                    if (da == 0 && dz == 0 && dd == 0) continue;
                    Cell n{(cell[0] + da + az_cells) % az_cells, cell[1] + dz, cell[2] + dd};
                    auto it = grid.find(n);
                    if (it != grid.end() && it->second->power_dbm > rec->power_dbm) is_peak = false;
                }
            }
        }
        if (is_peak)
            out.push_back(Mpc{rec->delay_ns, rec->azimuth_deg, rec->zenith_deg, rec->power_dbm});
    }
    std::stable_sort(out.begin(), out.end(), [](const Mpc& a, const Mpc& b) {
        if (a.power_dbm != b.power_dbm) return a.power_dbm > b.power_dbm;
        return a.delay_ns < b.delay_ns;
    });
    return out;
}

FitResult fit_close_in(std::span<const PathLossPoint> points, double d0_m,
                       std::optional<double> anchored_pl0) {
    std::set<double> distinct;
    for (const PathLossPoint& p : points) {
        if (!(p.distance_m >= d0_m))
            throw std::invalid_argument("fit_close_in: point below reference distance d0");
        distinct.insert(p.distance_m);
    }
    if (distinct.size() < 2) throw std::invalid_argument("degenerate fit: need >= 2 distinct distances");

    const std::size_t n = points.size();
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = 10.0 * std::log10(points[i].distance_m / d0_m);
        y[i] = points[i].path_loss_db;
    }

    FitResult fit{};
    fit.point_count = n;
    fit.anchored = anchored_pl0.has_value();
    std::size_t dof_used;
    if (anchored_pl0) {
        // Regression through the anchored intercept.
        double sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < n; ++i) {
            sxx += x[i] * x[i];
            sxy += x[i] * (y[i] - *anchored_pl0);
        }
        fit.pl0_db = *anchored_pl0;
        fit.exponent_n = sxy / sxx;
        dof_used = 1;
    } else {
        double mx = 0, my = 0;
        for (std::size_t i = 0; i < n; ++i) {
            mx += x[i];
            my += y[i];
        }
        mx /= static_cast<double>(n);
        my /= static_cast<double>(n);
        double sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < n; ++i) {
            sxx += (x[i] - mx) * (x[i] - mx);
            sxy += (x[i] - mx) * (y[i] - my);
        }
        fit.exponent_n = sxy / sxx;
        fit.pl0_db = my - fit.exponent_n * mx;
        dof_used = 2;
    }
    if (!(fit.exponent_n > 0))
        throw std::invalid_argument("fit_close_in: fitted exponent not positive");

    double ssr = 0;
    fit.residuals_db.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double r = y[i] - (fit.pl0_db + fit.exponent_n * x[i]);
        fit.residuals_db[i] = r;
        ssr += r * r;
    }
    fit.shadow_sigma_db = n > dof_used ? std::sqrt(ssr / static_cast<double>(n - dof_used)) : 0.0;
    return fit;
}

std::string FitResult::to_json() const {
    std::ostringstream out;
    out << "{\n"
        << "  \"pl0_db\": " << util::format_double(pl0_db) << ",\n"
        << "  \"n\": " << util::format_double(exponent_n) << ",\n"
        << "  \"sigma_db\": " << util::format_double(shadow_sigma_db) << ",\n"
        << "  \"points\": " << point_count << ",\n"
        << "  \"anchored\": " << (anchored ? "true" : "false") << "\n"
        << "}";
    return out.str();
}

double snap_distance_to_delay_grid(double distance_m, double delay_bin_ns) {
    double delay_ns = distance_m / channel::kSpeedOfLightMps * 1e9;
    double snapped = std::round(delay_ns / delay_bin_ns) * delay_bin_ns;
    return snapped * 1e-9 * channel::kSpeedOfLightMps;
}

std::string generate_synthetic_padp(const SyntheticTruth& truth, double distance_m,
                                    simcore::RngStream& stream) {
    const double d = snap_distance_to_delay_grid(distance_m, truth.delay_bin_ns);
    const double direct_delay = std::round(d / channel::kSpeedOfLightMps * 1e9 / truth.delay_bin_ns) *
                                truth.delay_bin_ns;

    double shadow = truth.model.shadow_sigma_db > 0 ? stream.normal() : 0.0;
    double pl = path_loss_db(truth.model, d,
                             truth.model.shadow_sigma_db > 0 ? std::optional<double>(shadow)
                                                             : std::nullopt);
    std::vector<PadpRecord> records;
    records.push_back(PadpRecord{0.0, 0.0, direct_delay, -pl});

    for (const SyntheticMpc& p : truth.extra_paths) {
        if (!on_grid(p.azimuth_deg, 0.0, kAzimuthMaxDeg, kAngleStepDeg) ||
            !on_grid(p.zenith_deg, kZenithMinDeg, kZenithMaxDeg, kAngleStepDeg))
            throw std::invalid_argument("generate_synthetic_padp: truth MPC off the angular grid");
        double delay = direct_delay +
                       std::max(1.0, std::round(p.delay_offset_ns / truth.delay_bin_ns)) *
                           truth.delay_bin_ns;
        records.push_back(PadpRecord{p.azimuth_deg, p.zenith_deg, delay,
                                     -pl - p.power_below_direct_db});
    }

    // Floor-level filler cells at pseudo-random grid positions away from
    // the injected paths (kept [0,1) dB above the floor, well under any
    // sensible detection threshold).
    std::set<std::array<long, 3>> taken;
    for (const PadpRecord& r : records)
        taken.insert({static_cast<long>(std::llround(r.azimuth_deg / kAngleStepDeg)),
                      static_cast<long>(std::llround((r.zenith_deg - kZenithMinDeg) / kAngleStepDeg)),
                      static_cast<long>(std::llround(r.delay_ns / truth.delay_bin_ns))});
    int placed = 0;
    while (placed < truth.noise_cells) {
        long az = static_cast<long>(stream.bits() % 72);
        long zen = static_cast<long>(stream.bits() % 9);
        long bin = static_cast<long>(stream.bits() % 512);
        if (!taken.insert({az, zen, bin}).second) continue;
        records.push_back(PadpRecord{az * kAngleStepDeg, kZenithMinDeg + zen * kAngleStepDeg,
                                     bin * truth.delay_bin_ns,
                                     truth.noise_floor_dbm + stream.uniform()});
        ++placed;
    }

    std::stable_sort(records.begin(), records.end(), [](const PadpRecord& a, const PadpRecord& b) {
        if (a.delay_ns != b.delay_ns) return a.delay_ns < b.delay_ns;
        if (a.azimuth_deg != b.azimuth_deg) return a.azimuth_deg < b.azimuth_deg;
        return a.zenith_deg < b.zenith_deg;
    });
    std::ostringstream out;
    write_padp_csv(out, records);
    return out.str();
}

PathLossPoint point_from_padp(std::span<const PadpRecord> records, double noise_floor_dbm,
                              double threshold_db, double eirp_dbm, double delay_bin_ns) {
    auto mpcs = extract_mpcs(records, noise_floor_dbm, threshold_db, delay_bin_ns);
    if (mpcs.empty()) throw std::invalid_argument("point_from_padp: no MPC above threshold");
    const Mpc& direct = mpcs.front();
    return PathLossPoint{direct.delay_ns * 1e-9 * channel::kSpeedOfLightMps,
                         eirp_dbm - direct.power_dbm};
}

}  // namespace wdcsim::padp
