#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mpenergy/predictor.hpp"
#include "mpenergy/radio_profile.hpp"

namespace mpenergy {

struct ControllerParams {
    double kappa_bytes = 1 << 20;   // WiFi bytes before the LTE subflow is opened
    double tau_ms = 3000;           // fallback timer for the delayed establishment
    double delta_ms = 200;          // throughput sampling interval
    double rho = 0.125;             // predictor smoothing weight
    double h_steps = 1;             // forecast horizon, in sampling intervals
    HwInit predictor_init = HwInit::slope_init;

    // A suspended LTE subflow yields no samples; its estimate relaxes toward
    // this prior at `lte_decay_per_tick` per interval.
    double lte_prior_mbps = 10.0;
    double lte_decay_per_tick = 0.05;
    // Region predicate needs positive throughputs.
    double forecast_floor_mbps = 0.01;

    void validate() const;  // throws std::domain_error
};

enum class Phase { delaying_lte, both_active, wifi_only };
const char* to_string(Phase p);

enum class CommandType { establish_lte, suspend_lte, resume_lte };
const char* to_string(CommandType c);

/// Path-control command handed to the transport/simulator. Resume carries
/// the two sender-side effects that make a fresh LTE subflow usable at once.
struct PathCommand {
    CommandType type;
    bool zero_lte_rtt = false;        // scheduler probes LTE on the next packet
    bool disable_cwnd_reset = false;  // skip the idle-restart window collapse
};

struct DecisionRecord {
    double time_ms = 0;
    Phase from = Phase::delaying_lte;
    Phase to = Phase::delaying_lte;
    CommandType command = CommandType::establish_lte;
    double b_wifi_forecast = 0;
    double b_lte_forecast = 0;
};

/// Decision engine for energy-aware two-path downloads: postpones the LTE
/// subflow until kappa bytes or tau ms, then suspends/resumes it on every
/// sampling tick according to the WiFi-only region predicate over the
/// forecast throughputs.
///
/// Pure state machine: (state, event) -> (state', optional command); the
/// caller owns the clock and feeds byte counts.
class EmptcpController {
public:
    EmptcpController(const ControllerParams& params, const ProfileSet& profiles);

    /// `primary` is the interface the connection opened on. Starting on WiFi
    /// arms the delayed establishment; anything else opens LTE immediately.
    std::optional<PathCommand> on_connection_start(double now_ms, Iface primary);

    /// Byte-delivery notification. Only WiFi bytes count toward kappa.
    std::optional<PathCommand> on_bytes(Iface path, double bytes, double now_ms);

    /// Periodic sample: bytes delivered per path over the closing interval.
    /// Must be called every delta_ms after connection start. Pass nullopt
    /// for the LTE bytes while that subflow cannot transmit yet (its radio
    /// is still promoting): an interval without a usable subflow is not a
    /// throughput observation.
    std::optional<PathCommand> on_tick(double now_ms, double wifi_bytes,
                                       std::optional<double> lte_bytes);

    Phase phase() const { return phase_; }
    double wifi_bytes_since_start() const { return wifi_bytes_since_start_; }
    double lte_estimate_mbps() const { return lte_estimate_mbps_; }
    const std::vector<DecisionRecord>& decisions() const { return decisions_; }

    /// CSV: time_ms,phase_from,phase_to,command,b_wifi_forecast,b_lte_forecast
    void write_decision_log(std::ostream& out) const;

private:
    PathCommand establish(double now_ms);
    PathCommand transition(double now_ms, Phase to, CommandType cmd, double fw, double fl);

    ControllerParams params_;
    const ProfileSet* profiles_;
    Phase phase_ = Phase::delaying_lte;
    bool started_ = false;
    bool lte_established_ = false;
    double wifi_bytes_since_start_ = 0;
    double delay_deadline_ms_ = 0;
    HoltWinters wifi_predictor_;
    HoltWinters lte_predictor_;
    double lte_estimate_mbps_;
    std::vector<DecisionRecord> decisions_;
};

} // namespace mpenergy
