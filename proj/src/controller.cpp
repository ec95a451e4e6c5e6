#include "mpenergy/controller.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "mpenergy/efficiency_map.hpp"
#include "mpenergy/text_format.hpp"
#include "mpenergy/units.hpp"

namespace mpenergy {

void ControllerParams::validate() const {
    if (kappa_bytes < 0) throw std::domain_error("kappa_bytes must be >= 0");
    if (!(tau_ms > 0)) throw std::domain_error("tau_ms must be > 0");
    if (!(delta_ms > 0)) throw std::domain_error("delta_ms must be > 0");
    if (!(rho > 0 && rho < 1)) throw std::domain_error("rho must be in (0,1)");
    if (!(h_steps > 0)) throw std::domain_error("h_steps must be > 0");
    if (!(lte_prior_mbps > 0)) throw std::domain_error("lte_prior_mbps must be > 0");
    if (!(forecast_floor_mbps > 0)) throw std::domain_error("forecast_floor_mbps must be > 0");
}

const char* to_string(Phase p) {
    switch (p) {
    case Phase::delaying_lte: return "delaying_lte";
    case Phase::both_active: return "both_active";
    case Phase::wifi_only: return "wifi_only";
    }
    return "?";
}

const char* to_string(CommandType c) {
    switch (c) {
    case CommandType::establish_lte: return "establish_lte";
    case CommandType::suspend_lte: return "suspend_lte";
    case CommandType::resume_lte: return "resume_lte";
    }
    return "?";
}

EmptcpController::EmptcpController(const ControllerParams& params, const ProfileSet& profiles)
    : params_(params),
      profiles_(&profiles),
      wifi_predictor_(params.rho, params.predictor_init),
      lte_predictor_(params.rho, params.predictor_init),
      lte_estimate_mbps_(params.lte_prior_mbps) {
    params_.validate();
}

std::optional<PathCommand> EmptcpController::on_connection_start(double now_ms, Iface primary) {
    started_ = true;
    if (primary == Iface::wifi) {
        phase_ = Phase::delaying_lte;
        delay_deadline_ms_ = now_ms + params_.tau_ms;
        return std::nullopt;
    }
    return establish(now_ms);
}

PathCommand EmptcpController::establish(double now_ms) {
    lte_established_ = true;
    const Phase from = phase_;
    phase_ = Phase::both_active;
    const double fw = wifi_predictor_.ready() ? wifi_predictor_.forecast(params_.h_steps) : 0.0;
    decisions_.push_back({now_ms, from, phase_, CommandType::establish_lte, fw,
                          lte_estimate_mbps_});
    return PathCommand{CommandType::establish_lte};
}

std::optional<PathCommand> EmptcpController::on_bytes(Iface path, double bytes, double now_ms) {
    if (phase_ != Phase::delaying_lte || !started_) return std::nullopt;
    if (path == Iface::wifi) wifi_bytes_since_start_ += bytes;
    if (wifi_bytes_since_start_ >= params_.kappa_bytes || now_ms >= delay_deadline_ms_)
        return establish(now_ms);
    return std::nullopt;
}

PathCommand EmptcpController::transition(double now_ms, Phase to, CommandType cmd, double fw,
                                         double fl) {
    decisions_.push_back({now_ms, phase_, to, cmd, fw, fl});
    phase_ = to;
    PathCommand out{cmd};
    if (cmd == CommandType::resume_lte) {
        out.zero_lte_rtt = true;
        out.disable_cwnd_reset = true;
        // The pre-suspension trend is stale by now; restart the predictor
        // flat at the current estimate so the first samples after the resume
        // are judged on their own.
        lte_predictor_ = HoltWinters(params_.rho, params_.predictor_init);
        lte_predictor_.update(lte_estimate_mbps_);
        lte_predictor_.update(lte_estimate_mbps_);
    }
    return out;
}

std::optional<PathCommand> EmptcpController::on_tick(double now_ms, double wifi_bytes,
                                                     std::optional<double> lte_bytes) {
    if (!started_) return std::nullopt;

    const double interval_s = params_.delta_ms / 1000.0;
    wifi_predictor_.update(mbps_from_bytes(wifi_bytes, interval_s));

    if (phase_ == Phase::delaying_lte) {
        // The subflow does not exist yet; only the fallback timer can act.
        if (now_ms >= delay_deadline_ms_) return establish(now_ms);
        return std::nullopt;
    }

    if (phase_ == Phase::both_active) {
        if (lte_bytes) {
            lte_predictor_.update(mbps_from_bytes(*lte_bytes, interval_s));
            if (lte_predictor_.ready())
                lte_estimate_mbps_ = std::max(params_.forecast_floor_mbps,
                                              lte_predictor_.forecast(params_.h_steps));
        }
    } else {
        // Suspended path: no samples arrive, relax the estimate toward the prior.
        lte_estimate_mbps_ +=
            params_.lte_decay_per_tick * (params_.lte_prior_mbps - lte_estimate_mbps_);
    }

    if (!wifi_predictor_.ready()) return std::nullopt;
    const double fw =
        std::max(params_.forecast_floor_mbps, wifi_predictor_.forecast(params_.h_steps));
    const double fl = std::max(params_.forecast_floor_mbps, lte_estimate_mbps_);

    const bool wifi_only = wifi_only_region(*profiles_, fw, fl);
    if (phase_ == Phase::both_active && wifi_only)
        return transition(now_ms, Phase::wifi_only, CommandType::suspend_lte, fw, fl);
    if (phase_ == Phase::wifi_only && !wifi_only)
        return transition(now_ms, Phase::both_active, CommandType::resume_lte, fw, fl);
    return std::nullopt;
}

void EmptcpController::write_decision_log(std::ostream& out) const {
    out << "time_ms,phase_from,phase_to,command,b_wifi_forecast,b_lte_forecast\n";
    for (const auto& d : decisions_)
        out << format_double(d.time_ms) << ',' << to_string(d.from) << ',' << to_string(d.to)
            << ',' << to_string(d.command) << ',' << format_double(d.b_wifi_forecast) << ','
            << format_double(d.b_lte_forecast) << '\n';
}

} // namespace mpenergy
