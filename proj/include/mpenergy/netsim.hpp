#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "mpenergy/controller.hpp"
#include "mpenergy/radio_profile.hpp"
#include "mpenergy/scenario.hpp"

namespace mpenergy {

enum class Policy { tcp_wifi, tcp_lte, mptcp, emptcp, wifi_first };
const char* to_string(Policy p);
Policy policy_from_string(const std::string& s);

/// Transport-level knobs of the fluid two-path model. The contention proxy
/// constants only need to reproduce directional effects; they are
/// configuration, not measurements.
struct SimParams {
    double mss_bytes = 1460;
    double initial_window_packets = 10;
    double rtt_wifi_ms = 15;
    double rtt_lte_ms = 65;
    double cwnd_cap_bdp_factor = 1.5;
    double rto_floor_ms = 1000;
    // Shared receive buffer: out-of-order data waiting on the slowest active
    // subflow bounds the aggregate rate by recv_window / max(RTT). This is
    // what starves a long-RTT subflow to a trickle while a short-RTT subflow
    // is fast, and frees it to run at full window when it is the only path.
    double recv_window_bytes = 131072;
    double loss_per_interferer_per_rtt = 0.01;
    double rtt_inflation_ms_per_interferer = 10;
    double handshake_ms = 65;  // backup-subflow open pulse (wifi_first)

    void validate() const;
};

struct PathStats {
    double bytes = 0;
    double transfer_j = 0;        // per-byte energy at the achieved rate
    double radio_j = 0;           // promotion + tail energy
    double active_s = 0;          // time spent actually moving data
    double mean_rtt_ms = 0;       // mean effective RTT over transmitting steps
    int promotions = 0;
    int full_tails = 0;
    int interrupted_tails = 0;
};

struct ThroughputSample {
    double time_s = 0;
    Iface path = Iface::wifi;
    double mbps = 0;
};

struct SimReport {
    Policy policy = Policy::tcp_wifi;
    std::uint64_t seed = 0;
    bool fixed_duration = false;
    bool completed = false;
    double download_time_s = 0;     // delivery time for fixed-size runs
    double bytes_downloaded = 0;
    double total_joules = 0;
    PathStats wifi;
    PathStats lte;
    std::vector<DecisionRecord> command_log;
    std::vector<std::pair<double, double>> energy_timeseries;  // (time_s, cumulative_j), 1 Hz
    std::vector<ThroughputSample> throughput_trace;            // per path, 1 Hz

    double energy_per_byte_uj() const {
        return bytes_downloaded > 0 ? total_joules * 1e6 / bytes_downloaded : 0.0;
    }
};

void write_report(std::ostream& out, const SimReport& r);
void write_energy_timeseries_csv(std::ostream& out, const SimReport& r);
void write_throughput_trace_csv(std::ostream& out, const SimReport& r);

/// The seeded piecewise-constant sample paths a scenario realizes, as
/// (time_ms, value) steps. Every policy run over the same scenario+seed
/// sees exactly these.
struct BandwidthProcesses {
    std::vector<std::pair<double, double>> wifi_bw;
    std::vector<std::pair<double, double>> lte_bw;
    std::vector<std::pair<double, double>> active_interferers;
};
BandwidthProcesses bandwidth_processes(const Scenario& scenario);

/// One candidate subflow as the packet scheduler sees it.
struct CandidatePath {
    Iface id = Iface::wifi;
    bool eligible = false;     // established, not suspended, window/credit headroom
    double sched_rtt_ms = 0;   // measured RTT, or 0 right after a resume
};

/// Lowest-RTT packet scheduling: among eligible paths pick the smallest
/// scheduler-visible RTT (first wins ties). Returns the index into
/// `candidates`, or -1 when none is eligible.
int schedule_packet(std::span<const CandidatePath> candidates);

/// Runs one deterministic download and returns the aggregate report.
/// Fixed-size runs end when the file is delivered (the radios then drain
/// their tails into the energy total); fixed-duration runs integrate
/// exactly to the scenario duration. Throws sim_timeout_error if a
/// fixed-size run cannot finish within the duration limit.
SimReport run(const Scenario& scenario, Policy policy, const ControllerParams& cparams,
              const ProfileSet& profiles, const SimParams& sparams = SimParams{});

} // namespace mpenergy
