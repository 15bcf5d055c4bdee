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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "wdcsim/channel/linkbudget.hpp"
#include "wdcsim/collectives/collectives.hpp"
#include "wdcsim/costmodels/sweep.hpp"
#include "wdcsim/padp/padp.hpp"
#include "wdcsim/sim/driver.hpp"
#include "wdcsim/util/errors.hpp"
#include "wdcsim/util/text.hpp"

namespace {

namespace fs = std::filesystem;
using namespace wdcsim;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write file: " + path.string());
    out << content;
}

/// Scenario lookup: as given, then under $WDCSIM_CONFIG_DIR.
fs::path resolve_scenario(const std::string& name) {
    fs::path direct(name);
    if (fs::exists(direct)) return direct;
    if (const char* dir = std::getenv("WDCSIM_CONFIG_DIR")) {
        fs::path alt = fs::path(dir) / name;
        if (fs::exists(alt)) return alt;
    }
    throw std::invalid_argument("scenario file not found: " + name);
}

std::vector<double> make_grid(double lo, double hi, int points) {
    if (points < 1 || !(hi >= lo)) throw std::invalid_argument("invalid sweep range");
    std::vector<double> grid;
    if (points == 1) {
        grid.push_back(lo);
        return grid;
    }
    for (int i = 0; i < points; ++i)
        grid.push_back(lo + (hi - lo) * static_cast<double>(i) / (points - 1));
    return grid;
}

int cmd_linkbudget(double distance, double freq, double bandwidth, double tx_power,
                   const std::vector<double>& gains, double nf) {
    if (!(distance > 0)) throw std::invalid_argument("distance must be positive");
    if (gains.size() != 2) throw std::invalid_argument("--gain expects tx,rx");
    channel::LinkBudget budget;
    budget.tx_power_dbm = tx_power;
    budget.tx_gain_dbi = gains[0];
    budget.rx_gain_dbi = gains[1];
    budget.noise_figure_db = nf;
    budget.bandwidth_hz = bandwidth;
    budget.path_loss_db = channel::free_space_path_loss_db(distance, freq);
    std::cout << channel::link_budget_report_json(budget) << "\n";
    return kExitOk;
}

int cmd_sweep(const std::string& axis_name, double lo, double hi, int points,
              const std::vector<std::string>& media_names, int switches, double distance,
              double rate, const std::string& out_path) {
    costmodels::SweepAxis axis;
    if (axis_name == "distance") axis = costmodels::SweepAxis::Distance;
    else if (axis_name == "rate") axis = costmodels::SweepAxis::Rate;
    else throw std::invalid_argument("--axis must be distance or rate");

    std::vector<costmodels::Medium> media;
    for (const std::string& m : media_names) {
        if (m == "thz") media.push_back(costmodels::Medium::Thz);
        else if (m == "optical") media.push_back(costmodels::Medium::Optical);
        else if (m == "copper") media.push_back(costmodels::Medium::Copper);
        else throw std::invalid_argument("unknown medium: " + m);
    }

    costmodels::SweepModels models;
    models.optical_hops = switches;
    models.fixed_distance_m = distance;
    models.fixed_rate_bps = rate;

    auto rows = costmodels::sweep(axis, make_grid(lo, hi, points), media, models);
    std::ostringstream csv;
    costmodels::write_sweep_csv(csv, rows);
    write_file(out_path, csv.str());

    auto summary = costmodels::summarize_sweep(rows, models);
    std::cout << "rows: " << rows.size() << "\n";
    if (summary.thz_crossover_distance_m)
        std::cout << "thz/optical crossover distance: "
                  << util::format_double(*summary.thz_crossover_distance_m) << " m\n";
    if (summary.thz_sweet_rate_bps)
        std::cout << "thz sweet-region rate: "
                  << util::format_double(*summary.thz_sweet_rate_bps / 1e9) << " Gbps ("
                  << util::format_double(*summary.thz_min_energy_j_per_bit * 1e12) << " pJ/bit)\n";
    std::cout << "wrote " << out_path << "\n";
    return kExitOk;
}

int cmd_simulate(const std::string& scenario_name, std::int64_t seed_override, bool has_seed,
                 const std::string& out_dir) {
    sim::Scenario scenario = sim::Scenario::parse(read_file(resolve_scenario(scenario_name)));
    if (has_seed) scenario.seed = static_cast<std::uint64_t>(seed_override);
    sim::RunOutputs run = sim::run_scenario(scenario);

    fs::path dir(out_dir);
    write_file(dir / "events.csv", run.event_log_csv);
    write_file(dir / "reconfig.csv", run.reconfig_log_csv);
    write_file(dir / "metrics.json", run.metrics_json());

    std::cout << "scenario_digest: " << run.scenario_digest << "\n";
    std::cout << "output_digest: " << run.output_digest() << "\n";
    std::cout << "served_fraction: " << util::format_double(run.served_fraction) << "\n";
    std::cout << "mean_latency_ns: " << util::format_double(run.mean_latency_ns) << "\n";
    std::cout << "reconfig_count: " << run.reconfig_count << "\n";
    std::cout << "wrote " << (dir / "events.csv").string() << ", "
              << (dir / "reconfig.csv").string() << ", " << (dir / "metrics.json").string()
              << "\n";
    return kExitOk;
}

int cmd_allreduce(int nodes, double bits, const std::string& fabric_kind, double spacing,
                  std::uint64_t seed) {
    if (nodes < 2) throw std::invalid_argument("--nodes must be >= 2");
    collectives::CollectiveSpec spec;
    spec.op = collectives::CollectiveSpec::Op::AllreduceRing;
    spec.node_count = nodes;
    spec.message_bits = bits;

    auto plm = channel::PathLossModel::free_space(300e9);
    fabric::OverlayParams op;

    fabric::Topology topo;
    simcore::RngStream queue_rng(seed, "queuing");
    collectives::SimulateOptions options;
    if (fabric_kind == "thz-ring") {
        topo = collectives::build_uniform_thz_ring(nodes, spacing, plm, op);
    } else if (fabric_kind == "optical-fattree") {
        fabric::FatTreeParams ft;
        ft.racks_per_tor = 2;
        ft.tors_per_pod = 2;
        topo = fabric::build_fat_tree(nodes, 3, 400e9, ft);
        options.queue_rng = &queue_rng;
    } else {
        throw std::invalid_argument("--fabric must be thz-ring or optical-fattree");
    }

    simcore::SimEngine engine;
    auto run = collectives::simulate_collective(spec, topo, engine, options);

    auto ring_path = fabric::route(topo, 0, 1 % nodes, options.routing);
    auto cost = collectives::alpha_beta_for_path(*ring_path, options.routing.latency);
    double analytic = collectives::allreduce_ring_time_ns(spec, cost);
    std::cout << collectives::collective_report_json(spec, fabric_kind, analytic, run) << "\n";
    return kExitOk;
}

int cmd_fit(const std::vector<std::string>& inputs, bool anchor, double eirp, double floor,
            double threshold, const std::string& out_path) {
    std::vector<std::string> files;
    for (const std::string& input : inputs) {
        fs::path p(input);
        if (fs::is_directory(p)) {
            std::vector<fs::path> found;
            for (const auto& entry : fs::directory_iterator(p))
                if (entry.is_regular_file() && entry.path().extension() == ".csv")
                    found.push_back(entry.path());
            std::sort(found.begin(), found.end());
            for (const auto& f : found) files.push_back(f.string());
        } else {
            files.push_back(input);
        }
    }
    if (files.empty()) throw std::invalid_argument("no PADP files given");

    std::vector<padp::PathLossPoint> points;
    for (const std::string& file : files) {
        std::ifstream in(file);
        if (!in) throw std::invalid_argument("cannot open file: " + file);
        std::vector<padp::PadpRecord> records;
        try {
            records = padp::parse_padp(in);
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument(file + ": " + e.what());
        }
        if (records.empty()) continue;
        points.push_back(padp::point_from_padp(records, floor, threshold, eirp));
    }

    std::optional<double> anchored;
    if (anchor) anchored = channel::free_space_path_loss_db(1.0, 300e9);
    padp::FitResult fit = padp::fit_close_in(points, 1.0, anchored);
    std::cout << fit.to_json() << "\n";

    std::ostringstream residuals;
    residuals << "distance_m,path_loss_db,residual_db\n";
    for (std::size_t i = 0; i < points.size(); ++i)
        residuals << util::format_double(points[i].distance_m) << ','
                  << util::format_double(points[i].path_loss_db) << ','
                  << util::format_double(fit.residuals_db[i]) << '\n';
    write_file(out_path, residuals.str());
    std::cout << "wrote " << out_path << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"THz / optical / copper data-center interconnect simulator"};
    app.require_subcommand(1);

    // linkbudget
    auto* lb = app.add_subcommand("linkbudget", "One-link budget report (free-space path)");
    double lb_distance = 10.0, lb_freq = 300e9, lb_bw = 20e9, lb_tx = 20.0, lb_nf = 10.0;
    std::vector<double> lb_gains{20.0, 20.0};
    lb->add_option("--distance", lb_distance, "link distance in m");
    lb->add_option("--freq", lb_freq, "carrier frequency in Hz");
    lb->add_option("--bandwidth", lb_bw, "bandwidth in Hz");
    lb->add_option("--tx-power", lb_tx, "transmit power in dBm");
    lb->add_option("--gain", lb_gains, "tx,rx antenna gains in dBi")->delimiter(',')->expected(1, 2);
    lb->add_option("--nf", lb_nf, "receiver noise figure in dB");

    // sweep
    auto* sw = app.add_subcommand("sweep", "Energy/latency sweep CSV across media");
    std::string sw_axis = "distance";
    double sw_lo = 1.0, sw_hi = 100.0;
    int sw_points = 100;
    std::vector<std::string> sw_media{"thz", "optical", "copper"};
    int sw_switches = 0;
    double sw_distance = 10.0, sw_rate = 400e9;
    std::string sw_out = "sweep.csv";
    sw->add_option("--axis", sw_axis, "distance | rate");
    sw->add_option("--from", sw_lo, "grid start (m or bits/s)");
    sw->add_option("--to", sw_hi, "grid end");
    sw->add_option("--points", sw_points, "grid size");
    sw->add_option("--media", sw_media, "subset of thz,optical,copper")->delimiter(',');
    sw->add_option("--switches", sw_switches, "optical switch hops");
    sw->add_option("--distance", sw_distance, "fixed distance for rate sweeps (m)");
    sw->add_option("--rate", sw_rate, "fixed rate for distance sweeps (bits/s)");
    sw->add_option("--out", sw_out, "output CSV path");

    // simulate
    auto* si = app.add_subcommand("simulate", "Run a scenario file deterministically");
    std::string si_scenario;
    std::int64_t si_seed = 0;
    std::string si_out = "out";
    si->add_option("scenario", si_scenario, "scenario file")->required();
    auto* seed_opt = si->add_option("--seed", si_seed, "seed override");
    si->add_option("--out", si_out, "output directory");

    // allreduce
    auto* ar = app.add_subcommand("allreduce", "Analytic vs simulated ring AllReduce");
    int ar_nodes = 4;
    double ar_bits = 4e6;
    std::string ar_fabric = "thz-ring";
    double ar_spacing = 2.0;
    std::uint64_t ar_seed = 42;
    ar->add_option("--nodes", ar_nodes, "ring size");
    ar->add_option("--bits", ar_bits, "per-node tensor size in bits");
    ar->add_option("--fabric", ar_fabric, "thz-ring | optical-fattree");
    ar->add_option("--spacing", ar_spacing, "ring neighbor distance in m");
    ar->add_option("--seed", ar_seed, "queuing seed (optical)");

    // fit
    auto* ft = app.add_subcommand("fit", "Close-in path-loss fit from PADP files");
    std::vector<std::string> ft_inputs;
    bool ft_anchor = false;
    double ft_eirp = 0.0, ft_floor = padp::kDefaultNoiseFloorDbm, ft_threshold = 6.0;
    std::string ft_out = "residuals.csv";
    ft->add_option("inputs", ft_inputs, "PADP CSV files or directories")->required();
    ft->add_flag("--anchor", ft_anchor, "pin pl0 to the Friis value at 1 m");
    ft->add_option("--eirp", ft_eirp, "EIRP + rx gain normalization in dBm");
    ft->add_option("--floor", ft_floor, "noise floor in dBm");
    ft->add_option("--threshold", ft_threshold, "MPC detection threshold in dB");
    ft->add_option("--out", ft_out, "residuals CSV path");

    try {
        app.parse(argc, argv);
        if (lb->parsed())
            return cmd_linkbudget(lb_distance, lb_freq, lb_bw, lb_tx, lb_gains, lb_nf);
        if (sw->parsed())
            return cmd_sweep(sw_axis, sw_lo, sw_hi, sw_points, sw_media, sw_switches, sw_distance,
                             sw_rate, sw_out);
        if (si->parsed()) return cmd_simulate(si_scenario, si_seed, seed_opt->count() > 0, si_out);
        if (ar->parsed()) return cmd_allreduce(ar_nodes, ar_bits, ar_fabric, ar_spacing, ar_seed);
        if (ft->parsed())
            return cmd_fit(ft_inputs, ft_anchor, ft_eirp, ft_floor, ft_threshold, ft_out);
        return kExitUsage;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    } catch (const InvariantViolation& e) {
        std::cerr << "internal invariant violation: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
