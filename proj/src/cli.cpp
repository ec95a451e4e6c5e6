#include "mpenergy/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "mpenergy/app_config.hpp"
#include "mpenergy/efficiency_map.hpp"
#include "mpenergy/energy_model.hpp"
#include "mpenergy/errors.hpp"
#include "mpenergy/fitting.hpp"
#include "mpenergy/netsim.hpp"
#include "mpenergy/scenario.hpp"
#include "mpenergy/text_format.hpp"

namespace fs = std::filesystem;

namespace mpenergy {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw parse_error("cannot write '" + path + "'");
    return out;
}

AppConfig config_from_flag(const std::string& config_path) {
    return config_path.empty() ? AppConfig{} : load_app_config_file(config_path);
}

int cmd_fit(const std::string& input, const std::string& mode, const std::string& out_path,
            const std::string& mse_curve_path, const std::string& config_path) {
    AppConfig cfg = config_from_flag(config_path);
    std::ifstream in(input);
    if (!in) throw parse_error("cannot open '" + input + "'");

    std::ostringstream out;
    if (mode == "power_law") {
        PowerLawTable table = load_power_law_csv(in, input);
        if (table.empty()) throw fit_error(input + ": no samples");
        for (const auto& [key, samples] : table) {
            const auto& [ifc, dir] = key;
            PowerLawFit fit = fit_power_law(samples);
            const std::string prefix = std::string(to_string(ifc)) + "." + to_string(dir);
            out << prefix << ".alpha = " << format_double(fit.alpha) << "\n"
                << prefix << ".beta = " << format_double(fit.beta) << "\n"
                << prefix << ".r2_log = " << format_double(fit.r2_log) << "\n"
                << prefix << ".n_samples = " << fit.n_samples << "\n";
        }
    } else if (mode == "gamma") {
        GammaTable table = load_gamma_csv(in, input);
        if (table.empty()) throw fit_error(input + ": no runs");
        std::ostringstream curve;
        curve << "direction,gamma,mse\n";
        for (const auto& [dir, runs] : table) {
            GammaFit fit = fit_gamma(cfg.profiles, runs, dir);
            out << "gamma." << to_string(dir) << " = " << format_double(fit.gamma) << "\n"
                << "gamma." << to_string(dir) << ".mse = " << format_double(fit.mse) << "\n"
                << "gamma." << to_string(dir) << ".n_runs = " << runs.size() << "\n";
            for (const auto& [g, mse] : fit.mse_curve)
                curve << to_string(dir) << ',' << format_double(g) << ',' << format_double(mse)
                      << '\n';
        }
        if (!mse_curve_path.empty()) open_out(mse_curve_path) << curve.str();
    } else {
        throw parse_error("fit: mode must be power_law|gamma");
    }

    if (out_path.empty())
        std::cout << out.str();
    else
        open_out(out_path) << out.str();
    return 0;
}

int cmd_estimate(double s_wifi, double s_lte, double b_wifi, double b_lte,
                 std::optional<double> gamma, const std::string& direction,
                 const std::string& config_path) {
    AppConfig cfg = config_from_flag(config_path);
    const Direction dir = direction_from_string(direction);
    TransferInput in;
    in.s_wifi_bytes = s_wifi;
    in.s_lte_bytes = s_lte;
    in.b_wifi_mbps = b_wifi;
    in.b_lte_mbps = b_lte;
    in.gamma = gamma.value_or(cfg.profiles.gamma(dir));
    in.direction = dir;
    TransferEstimate est = mptcp_energy(cfg.profiles, in);
    std::cout << "s_wifi_bytes = " << format_double(in.s_wifi_bytes) << "\n"
              << "s_lte_bytes = " << format_double(in.s_lte_bytes) << "\n"
              << "b_wifi_mbps = " << format_double(in.b_wifi_mbps) << "\n"
              << "b_lte_mbps = " << format_double(in.b_lte_mbps) << "\n"
              << "gamma = " << format_double(in.gamma) << "\n"
              << "direction = " << to_string(dir) << "\n"
              << "theta = " << format_double(est.theta) << "\n"
              << "e_transfer_j = " << format_double(est.e_transfer_j) << "\n"
              << "e_total_j = " << format_double(est.e_total_j) << "\n";
    return 0;
}

int cmd_region(const std::string& mode, std::optional<double> file_size,
               std::optional<double> gamma, const std::string& direction, double bw_min,
               double bw_max, double step, const std::string& out_path,
               const std::string& config_path) {
    AppConfig cfg = config_from_flag(config_path);
    GridSpec spec;
    spec.b_wifi_min = spec.b_lte_min = bw_min;
    spec.b_wifi_max = spec.b_lte_max = bw_max;
    spec.step = step;
    GridParams params;
    params.mode = mode == "total" ? GridMode::total : GridMode::per_byte;
    if (mode != "total" && mode != "per_byte")
        throw parse_error("region: mode must be total|per_byte");
    params.file_size_bytes = file_size;
    params.gamma = gamma.value_or(0.0);
    params.direction = direction_from_string(direction);
    RegionGrid grid = export_grid(cfg.profiles, spec, params);
    if (out_path.empty())
        write_grid_csv(std::cout, grid);
    else {
        auto out = open_out(out_path);
        write_grid_csv(out, grid);
    }
    return 0;
}

void write_run_outputs(const fs::path& dir, const SimReport& report) {
    fs::create_directories(dir);
    {
        auto out = open_out((dir / "report.txt").string());
        write_report(out, report);
    }
    {
        auto out = open_out((dir / "energy_timeseries.csv").string());
        write_energy_timeseries_csv(out, report);
    }
    {
        auto out = open_out((dir / "throughput.csv").string());
        write_throughput_trace_csv(out, report);
    }
    {
        auto out = open_out((dir / "decisions.csv").string());
        out << "time_ms,phase_from,phase_to,command,b_wifi_forecast,b_lte_forecast\n";
        for (const auto& d : report.command_log)
            out << format_double(d.time_ms) << ',' << to_string(d.from) << ',' << to_string(d.to)
                << ',' << to_string(d.command) << ',' << format_double(d.b_wifi_forecast) << ','
                << format_double(d.b_lte_forecast) << '\n';
    }
}

int cmd_run(const std::string& scenario_path, const std::string& policy_name,
            std::optional<std::uint64_t> seed, const std::string& out_dir,
            const std::string& config_path) {
    AppConfig cfg = config_from_flag(config_path);
    Scenario sc = load_scenario_config_file(scenario_path);
    if (seed) sc.seed = *seed;
    const Policy policy = policy_from_string(policy_name);
    SimReport report = run(sc, policy, cfg.controller, cfg.profiles, cfg.sim);
    if (!out_dir.empty()) write_run_outputs(out_dir, report);
    write_report(std::cout, report);
    return 0;
}

struct MatrixRow {
    std::string scenario_path;
    std::string policy;
    std::uint64_t seed;
};

std::vector<MatrixRow> load_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open matrix '" + path + "'");
    std::vector<MatrixRow> rows;
    std::string line;
    int lineno = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const std::string where = path + ":" + std::to_string(lineno);
        auto cells = split_csv_row(t);
        if (!saw_header) {
            if (cells != std::vector<std::string>{"scenario_config", "policy", "seed"})
                throw parse_error(where + ": expected header scenario_config,policy,seed");
            saw_header = true;
            continue;
        }
        if (cells.size() != 3) throw parse_error(where + ": expected 3 columns");
        rows.push_back({cells[0], cells[1],
                        static_cast<std::uint64_t>(parse_int(cells[2], where))});
    }
    if (rows.empty()) throw parse_error(path + ": empty run matrix");
    std::set<std::string> keys;
    for (const auto& r : rows) {
        const std::string key = fs::path(r.scenario_path).stem().string() + "/" + r.policy +
                                "/" + std::to_string(r.seed);
        if (!keys.insert(key).second)
            throw parse_error(path + ": duplicate run tuple " + key);
    }
    return rows;
}

int cmd_sweep(const std::string& matrix_path, const std::string& out_dir,
              const std::string& config_path) {
    AppConfig cfg = config_from_flag(config_path);
    auto rows = load_matrix(matrix_path);
    fs::create_directories(out_dir);

    struct Result {
        MatrixRow row;
        bool ok = false;
        std::string error;
        SimReport report;
    };
    std::vector<Result> results;
    for (const auto& row : rows) {
        Result res;
        res.row = row;
        try {
            Scenario sc = load_scenario_config_file(row.scenario_path);
            sc.seed = row.seed;
            res.report = run(sc, policy_from_string(row.policy), cfg.controller, cfg.profiles,
                             cfg.sim);
            res.ok = true;
            const std::string stem = fs::path(row.scenario_path).stem().string();
            write_run_outputs(fs::path(out_dir) / (stem + "_" + row.policy + "_s" +
                                                   std::to_string(row.seed)),
                              res.report);
        } catch (const std::exception& e) {
            res.error = e.what();
            std::cerr << "sweep: run failed (" << row.scenario_path << "," << row.policy << ","
                      << row.seed << "): " << e.what() << "\n";
        }
        results.push_back(std::move(res));
    }

    // Per-seed normalization against the mptcp run of the same scenario.
    std::map<std::pair<std::string, std::uint64_t>, const SimReport*> mptcp_runs;
    for (const auto& r : results)
        if (r.ok && r.row.policy == "mptcp")
            mptcp_runs[{r.row.scenario_path, r.row.seed}] = &r.report;

    auto out = open_out((fs::path(out_dir) / "summary.csv").string());
    out << "scenario,policy,seed,energy_j,time_s_or_bytes,energy_per_byte_uj,"
           "energy_vs_mptcp,time_vs_mptcp,status\n";
    size_t ok_count = 0;
    for (const auto& r : results) {
        const std::string stem = fs::path(r.row.scenario_path).stem().string();
        out << stem << ',' << r.row.policy << ',' << r.row.seed << ',';
        if (!r.ok) {
            out << ",,,,,failed\n";
            continue;
        }
        ++ok_count;
        const double quantity =
            r.report.fixed_duration ? r.report.bytes_downloaded : r.report.download_time_s;
        out << format_double(r.report.total_joules) << ',' << format_double(quantity) << ','
            << format_double(r.report.energy_per_byte_uj()) << ',';
        auto it = mptcp_runs.find({r.row.scenario_path, r.row.seed});
        if (it != mptcp_runs.end() && it->second->total_joules > 0) {
            out << format_double(r.report.total_joules / it->second->total_joules) << ',';
            const double base = r.report.fixed_duration ? it->second->bytes_downloaded
                                                        : it->second->download_time_s;
            if (base > 0)
                out << format_double(quantity / base);
            out << ',';
        } else {
            out << ",,";
        }
        out << "ok\n";
    }
    std::cout << "sweep: " << ok_count << "/" << results.size() << " runs ok, summary at "
              << (fs::path(out_dir) / "summary.csv").string() << "\n";
    return ok_count == 0 ? 1 : 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"MPTCP energy model and energy-aware path management simulator"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "key=value config overriding built-in defaults")
        ->check(CLI::ExistingFile);

    // fit
    auto* fit = app.add_subcommand("fit", "fit power-law or gamma coefficients from CSV");
    std::string fit_input, fit_mode = "power_law", fit_out, fit_curve;
    fit->add_option("--input", fit_input, "measurement CSV")->required();
    fit->add_option("--mode", fit_mode, "power_law|gamma");
    fit->add_option("--out", fit_out, "coefficients file (stdout if omitted)");
    fit->add_option("--mse-curve", fit_curve, "gamma MSE curve CSV");

    // estimate
    auto* est = app.add_subcommand("estimate", "evaluate the two-path transfer energy model");
    double s_wifi = 0, s_lte = 0, b_wifi = 0, b_lte = 0;
    std::optional<double> est_gamma;
    std::string est_dir = "down";
    est->add_option("--s-wifi", s_wifi, "bytes over WiFi")->required();
    est->add_option("--s-lte", s_lte, "bytes over LTE")->required();
    est->add_option("--b-wifi", b_wifi, "WiFi throughput Mbps")->required();
    est->add_option("--b-lte", b_lte, "LTE throughput Mbps")->required();
    est->add_option("--gamma", est_gamma, "sharing factor (default: shipped)");
    est->add_option("--direction", est_dir, "down|up");

    // region
    auto* region = app.add_subcommand("region", "export an efficiency-region grid CSV");
    std::string region_mode = "per_byte", region_dir = "down", region_out;
    std::optional<double> region_size, region_gamma;
    double bw_min = 0.25, bw_max = 20.0, bw_step = 0.25;
    region->add_option("--mode", region_mode, "total|per_byte");
    region->add_option("--file-size", region_size, "bytes (total mode)");
    region->add_option("--gamma", region_gamma, "sharing factor (default: shipped)");
    region->add_option("--direction", region_dir, "down|up");
    region->add_option("--min", bw_min, "axis minimum Mbps");
    region->add_option("--max", bw_max, "axis maximum Mbps");
    region->add_option("--step", bw_step, "axis step Mbps");
    region->add_option("--out", region_out, "grid CSV path (stdout if omitted)");

    // run
    auto* runc = app.add_subcommand("run", "run one scenario under one policy");
    std::string run_scenario, run_policy, run_out;
    std::optional<std::uint64_t> run_seed;
    runc->add_option("--scenario", run_scenario, "scenario config file")->required();
    runc->add_option("--policy", run_policy, "tcp_wifi|tcp_lte|mptcp|emptcp|wifi_first")
        ->required();
    runc->add_option("--seed", run_seed, "override the scenario seed");
    runc->add_option("--out", run_out, "output directory");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "run a scenario x policy x seed matrix");
    std::string sweep_matrix, sweep_out = "sweep_out";
    sweep->add_option("--matrix", sweep_matrix, "CSV: scenario_config,policy,seed")->required();
    sweep->add_option("--out", sweep_out, "output directory");

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (fit->parsed())
            return cmd_fit(fit_input, fit_mode, fit_out, fit_curve, config_path);
        if (est->parsed())
            return cmd_estimate(s_wifi, s_lte, b_wifi, b_lte, est_gamma, est_dir, config_path);
        if (region->parsed())
            return cmd_region(region_mode, region_size, region_gamma, region_dir, bw_min, bw_max,
                              bw_step, region_out, config_path);
        if (runc->parsed())
            return cmd_run(run_scenario, run_policy, run_seed, run_out, config_path);
        if (sweep->parsed())
            return cmd_sweep(sweep_matrix, sweep_out, config_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace mpenergy
