#include "mpenergy/scenario.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "mpenergy/errors.hpp"
#include "mpenergy/text_format.hpp"

namespace mpenergy {

const char* to_string(ScenarioKind k) {
    switch (k) {
    case ScenarioKind::static_bw: return "static";
    case ScenarioKind::random_bw: return "random_bw";
    case ScenarioKind::background_onoff: return "background_onoff";
    case ScenarioKind::mobility_trace: return "mobility_trace";
    }
    return "?";
}

ScenarioKind scenario_kind_from_string(const std::string& s) {
    if (s == "static") return ScenarioKind::static_bw;
    if (s == "random_bw") return ScenarioKind::random_bw;
    if (s == "background_onoff") return ScenarioKind::background_onoff;
    if (s == "mobility_trace") return ScenarioKind::mobility_trace;
    throw parse_error("unknown scenario kind '" + s + "'");
}

void Scenario::validate() const {
    auto bad = [](const std::string& msg) { throw parse_error("scenario: " + msg); };
    if (file_size_bytes < 0) bad("file_size_bytes must be >= 0");
    if (!(duration_s > 0)) bad("duration_s must be > 0");
    if (fixed_duration && duration_s > 1e7) bad("fixed-duration run needs a workable duration_s");
    switch (kind) {
    case ScenarioKind::static_bw:
        if (wifi_bw_mbps < 0 || lte_bw_mbps < 0) bad("bandwidths must be >= 0");
        break;
    case ScenarioKind::random_bw:
        if (!(mean_interval_s > 0)) bad("mean_interval_s must be > 0");
        if (!(low_mbps >= 0) || !(high_mbps > 0)) bad("levels must be nonnegative");
        if (!(lte_mean_mbps > 0)) bad("lte_mean_mbps must be > 0");
        break;
    case ScenarioKind::background_onoff:
        if (n_interferers < 0) bad("n_interferers must be >= 0");
        if (!(lambda_on > 0) || !(lambda_off > 0)) bad("rates must be > 0");
        if (!(wifi_bw_mbps > 0)) bad("clean wifi_bw_mbps must be > 0");
        if (!(lte_mean_mbps > 0)) bad("lte_mean_mbps must be > 0");
        break;
    case ScenarioKind::mobility_trace:
        if (trace.empty()) bad("mobility trace is empty");
        for (size_t i = 1; i < trace.size(); ++i)
            if (trace[i].time_s < trace[i - 1].time_s) bad("trace times must be nondecreasing");
        break;
    }
}

Scenario make_static_scenario(double wifi_mbps, double lte_mbps, double file_size_bytes) {
    Scenario sc;
    sc.kind = ScenarioKind::static_bw;
    sc.wifi_bw_mbps = wifi_mbps;
    sc.lte_bw_mbps = lte_mbps;
    sc.file_size_bytes = file_size_bytes;
    sc.validate();
    return sc;
}

Scenario make_random_bw_scenario(double mean_interval_s, double low_mbps, double high_mbps,
                                 std::uint64_t seed) {
    Scenario sc;
    sc.kind = ScenarioKind::random_bw;
    sc.mean_interval_s = mean_interval_s;
    sc.low_mbps = low_mbps;
    sc.high_mbps = high_mbps;
    sc.seed = seed;
    sc.validate();
    return sc;
}

Scenario make_background_onoff_scenario(int n_interferers, double lambda_on, double lambda_off,
                                        std::uint64_t seed) {
    Scenario sc;
    sc.kind = ScenarioKind::background_onoff;
    sc.n_interferers = n_interferers;
    sc.lambda_on = lambda_on;
    sc.lambda_off = lambda_off;
    sc.seed = seed;
    sc.validate();
    return sc;
}

Scenario load_mobility_trace(std::istream& in, const std::string& source_name) {
    Scenario sc;
    sc.kind = ScenarioKind::mobility_trace;
    sc.file_size_bytes = 0;
    sc.fixed_duration = true;
    std::string line;
    int lineno = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const std::string where = source_name + ":" + std::to_string(lineno);
        auto cells = split_csv_row(t);
        if (!saw_header) {
            if (cells != std::vector<std::string>{"time_s", "wifi_bw_mbps", "lte_bw_mbps"})
                throw parse_error(where + ": expected header time_s,wifi_bw_mbps,lte_bw_mbps");
            saw_header = true;
            continue;
        }
        if (cells.size() != 3)
            throw parse_error(where + ": expected 3 columns");
        TracePoint p;
        p.time_s = parse_double(cells[0], where);
        p.wifi_mbps = parse_double(cells[1], where);
        p.lte_mbps = parse_double(cells[2], where);
        if (p.wifi_mbps < 0 || p.lte_mbps < 0)
            throw parse_error(where + ": bandwidths must be >= 0");
        if (!sc.trace.empty() && p.time_s < sc.trace.back().time_s)
            throw parse_error(where + ": time went backwards");
        sc.trace.push_back(p);
    }
    if (sc.trace.empty())
        throw parse_error(source_name + ": empty trace");
    sc.duration_s = sc.trace.back().time_s > 0 ? sc.trace.back().time_s : 1.0;
    sc.validate();
    return sc;
}

Scenario load_mobility_trace_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open trace '" + path + "'");
    Scenario sc = load_mobility_trace(in, path);
    sc.trace_path = path;
    return sc;
}

void write_mobility_trace(std::ostream& out, const std::vector<TracePoint>& trace) {
    out << "time_s,wifi_bw_mbps,lte_bw_mbps\n";
    for (const auto& p : trace)
        out << format_double(p.time_s) << ',' << format_double(p.wifi_mbps) << ','
            << format_double(p.lte_mbps) << '\n';
}

Scenario load_scenario_config(std::istream& in, const std::string& source_name) {
    Scenario sc;
    bool have_kind = false;
    for_each_config_line(in, source_name, [&](const std::string& key, const std::string& value,
                                              const std::string& where) {
        if (key == "kind") {
            sc.kind = scenario_kind_from_string(value);
            have_kind = true;
        } else if (key == "file_size_bytes") {
            sc.file_size_bytes = parse_double(value, where);
        } else if (key == "duration_s") {
            sc.duration_s = parse_double(value, where);
        } else if (key == "fixed_duration") {
            sc.fixed_duration = parse_int(value, where) != 0;
        } else if (key == "seed") {
            sc.seed = static_cast<std::uint64_t>(parse_int(value, where));
        } else if (key == "wifi_bw_mbps") {
            sc.wifi_bw_mbps = parse_double(value, where);
        } else if (key == "lte_bw_mbps") {
            sc.lte_bw_mbps = parse_double(value, where);
        } else if (key == "mean_interval_s") {
            sc.mean_interval_s = parse_double(value, where);
        } else if (key == "low_mbps") {
            sc.low_mbps = parse_double(value, where);
        } else if (key == "high_mbps") {
            sc.high_mbps = parse_double(value, where);
        } else if (key == "start_high") {
            sc.start_high = parse_int(value, where) != 0;
        } else if (key == "n_interferers") {
            sc.n_interferers = static_cast<int>(parse_int(value, where));
        } else if (key == "lambda_on") {
            sc.lambda_on = parse_double(value, where);
        } else if (key == "lambda_off") {
            sc.lambda_off = parse_double(value, where);
        } else if (key == "lte_mean_mbps") {
            sc.lte_mean_mbps = parse_double(value, where);
        } else if (key == "lte_jitter_frac") {
            sc.lte_jitter_frac = parse_double(value, where);
        } else if (key == "trace_csv") {
            Scenario traced = load_mobility_trace_file(value);
            sc.trace = std::move(traced.trace);
            sc.trace_path = value;
            sc.duration_s = traced.duration_s;
            sc.file_size_bytes = 0;
            sc.fixed_duration = true;
        } else {
            throw parse_error(where + ": unknown scenario key '" + key + "'");
        }
    });
    if (!have_kind)
        throw parse_error(source_name + ": missing 'kind'");
    sc.validate();
    return sc;
}

Scenario load_scenario_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open scenario config '" + path + "'");
    return load_scenario_config(in, path);
}

void write_scenario_config(std::ostream& out, const Scenario& sc) {
    out << "kind = " << to_string(sc.kind) << "\n"
        << "file_size_bytes = " << format_double(sc.file_size_bytes) << "\n"
        << "duration_s = " << format_double(sc.duration_s) << "\n"
        << "fixed_duration = " << (sc.fixed_duration ? 1 : 0) << "\n"
        << "seed = " << sc.seed << "\n";
    switch (sc.kind) {
    case ScenarioKind::static_bw:
        out << "wifi_bw_mbps = " << format_double(sc.wifi_bw_mbps) << "\n"
            << "lte_bw_mbps = " << format_double(sc.lte_bw_mbps) << "\n";
        break;
    case ScenarioKind::random_bw:
        out << "mean_interval_s = " << format_double(sc.mean_interval_s) << "\n"
            << "low_mbps = " << format_double(sc.low_mbps) << "\n"
            << "high_mbps = " << format_double(sc.high_mbps) << "\n"
            << "start_high = " << (sc.start_high ? 1 : 0) << "\n"
            << "lte_mean_mbps = " << format_double(sc.lte_mean_mbps) << "\n"
            << "lte_jitter_frac = " << format_double(sc.lte_jitter_frac) << "\n";
        break;
    case ScenarioKind::background_onoff:
        out << "wifi_bw_mbps = " << format_double(sc.wifi_bw_mbps) << "\n"
            << "n_interferers = " << sc.n_interferers << "\n"
            << "lambda_on = " << format_double(sc.lambda_on) << "\n"
            << "lambda_off = " << format_double(sc.lambda_off) << "\n"
            << "lte_mean_mbps = " << format_double(sc.lte_mean_mbps) << "\n"
            << "lte_jitter_frac = " << format_double(sc.lte_jitter_frac) << "\n";
        break;
    case ScenarioKind::mobility_trace:
        if (!sc.trace_path.empty()) out << "trace_csv = " << sc.trace_path << "\n";
        break;
    }
}

} // namespace mpenergy
