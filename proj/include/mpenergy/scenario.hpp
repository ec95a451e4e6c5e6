#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace mpenergy {

enum class ScenarioKind { static_bw, random_bw, background_onoff, mobility_trace };
const char* to_string(ScenarioKind k);
ScenarioKind scenario_kind_from_string(const std::string& s);

struct TracePoint {
    double time_s = 0;
    double wifi_mbps = 0;
    double lte_mbps = 0;
};

/// A fully specified experiment input. The seed determines every stochastic
/// draw; a scenario plus a policy is reproducible bit for bit.
/// fixed_duration runs download as much as possible until duration_s;
/// otherwise the run ends when file_size_bytes have been delivered.
struct Scenario {
    ScenarioKind kind = ScenarioKind::static_bw;
    double file_size_bytes = 32.0 * (1 << 20);
    double duration_s = 3600;
    bool fixed_duration = false;
    std::uint64_t seed = 1;

    // static_bw, and the clean (uncontended) WiFi rate for background_onoff
    double wifi_bw_mbps = 11;
    double lte_bw_mbps = 12;

    // random_bw: WiFi alternates between the two achieved-TCP levels at
    // exponentially spaced epochs.
    double mean_interval_s = 40;
    double low_mbps = 0.8;
    double high_mbps = 11;
    bool start_high = false;

    // background_onoff: independent on/off interferers sharing the channel.
    int n_interferers = 0;
    double lambda_on = 0.05;   // 1/mean on-duration (s)
    double lambda_off = 0.025; // 1/mean off-duration (s)

    // LTE process when not pinned by trace/static: constant mean with
    // per-second uniform jitter.
    double lte_mean_mbps = 12;
    double lte_jitter_frac = 0.2;

    // mobility_trace
    std::vector<TracePoint> trace;
    std::string trace_path;

    void validate() const;  // throws parse_error
};

Scenario make_static_scenario(double wifi_mbps, double lte_mbps, double file_size_bytes);

/// WiFi flips low/high at exponential epochs (mean `mean_interval_s`);
/// the LTE process keeps its default stochastic shape.
Scenario make_random_bw_scenario(double mean_interval_s, double low_mbps, double high_mbps,
                                 std::uint64_t seed);

/// `n_interferers` on/off sources contend for the WiFi channel: effective
/// WiFi bandwidth is the clean rate over (1 + active), and each active
/// source adds loss pressure and queueing delay (see SimParams).
Scenario make_background_onoff_scenario(int n_interferers, double lambda_on, double lambda_off,
                                        std::uint64_t seed);

/// CSV rows `time_s,wifi_bw_mbps,lte_bw_mbps`, nondecreasing time. The run
/// is fixed-duration over the trace span; bandwidths are piecewise constant.
Scenario load_mobility_trace(std::istream& in, const std::string& source_name = "trace");
Scenario load_mobility_trace_file(const std::string& path);
void write_mobility_trace(std::ostream& out, const std::vector<TracePoint>& trace);

/// Flat `key = value` scenario files; keys mirror the fields above.
Scenario load_scenario_config(std::istream& in, const std::string& source_name = "scenario");
Scenario load_scenario_config_file(const std::string& path);
void write_scenario_config(std::ostream& out, const Scenario& sc);

} // namespace mpenergy
