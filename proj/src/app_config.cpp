#include "mpenergy/app_config.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "mpenergy/errors.hpp"
#include "mpenergy/text_format.hpp"

namespace mpenergy {

namespace {

std::map<std::string, double*> tuning_fields(AppConfig& cfg) {
    std::map<std::string, double*> m;
    m["controller.kappa_bytes"] = &cfg.controller.kappa_bytes;
    m["controller.tau_ms"] = &cfg.controller.tau_ms;
    m["controller.delta_ms"] = &cfg.controller.delta_ms;
    m["controller.rho"] = &cfg.controller.rho;
    m["controller.h_steps"] = &cfg.controller.h_steps;
    m["controller.lte_prior_mbps"] = &cfg.controller.lte_prior_mbps;
    m["controller.lte_decay_per_tick"] = &cfg.controller.lte_decay_per_tick;
    m["controller.forecast_floor_mbps"] = &cfg.controller.forecast_floor_mbps;
    m["sim.mss_bytes"] = &cfg.sim.mss_bytes;
    m["sim.initial_window_packets"] = &cfg.sim.initial_window_packets;
    m["sim.rtt_wifi_ms"] = &cfg.sim.rtt_wifi_ms;
    m["sim.rtt_lte_ms"] = &cfg.sim.rtt_lte_ms;
    m["sim.cwnd_cap_bdp_factor"] = &cfg.sim.cwnd_cap_bdp_factor;
    m["sim.rto_floor_ms"] = &cfg.sim.rto_floor_ms;
    m["sim.recv_window_bytes"] = &cfg.sim.recv_window_bytes;
    m["sim.loss_per_interferer_per_rtt"] = &cfg.sim.loss_per_interferer_per_rtt;
    m["sim.rtt_inflation_ms_per_interferer"] = &cfg.sim.rtt_inflation_ms_per_interferer;
    m["sim.handshake_ms"] = &cfg.sim.handshake_ms;
    return m;
}

} // namespace

AppConfig load_app_config(std::istream& in, const std::string& source_name) {
    // Two passes over the same text: the profile loader consumes its keys,
    // then the tuning keys are applied here.
    std::stringstream buf;
    buf << in.rdbuf();
    AppConfig cfg;
    {
        std::stringstream s(buf.str());
        cfg.profiles = load_profiles(s, source_name);
    }
    auto fields = tuning_fields(cfg);
    std::stringstream s(buf.str());
    for_each_config_line(s, source_name, [&](const std::string& key, const std::string& value,
                                             const std::string& where) {
        auto it = fields.find(key);
        if (it != fields.end()) {
            *it->second = parse_double(value, where);
            return;
        }
        if (key == "controller.predictor_init") {
            if (value == "slope_init")
                cfg.controller.predictor_init = HwInit::slope_init;
            else if (value == "literal")
                cfg.controller.predictor_init = HwInit::literal;
            else
                throw parse_error(where + ": predictor_init must be slope_init|literal");
            return;
        }
        // Remaining keys were validated by the profile pass.
    });
    cfg.controller.validate();
    cfg.sim.validate();
    return cfg;
}

AppConfig load_app_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open config '" + path + "'");
    return load_app_config(in, path);
}

void write_app_config(std::ostream& out, const AppConfig& cfg) {
    write_profiles(out, cfg.profiles);
    out << "controller.kappa_bytes = " << format_double(cfg.controller.kappa_bytes) << "\n"
        << "controller.tau_ms = " << format_double(cfg.controller.tau_ms) << "\n"
        << "controller.delta_ms = " << format_double(cfg.controller.delta_ms) << "\n"
        << "controller.rho = " << format_double(cfg.controller.rho) << "\n"
        << "controller.h_steps = " << format_double(cfg.controller.h_steps) << "\n"
        << "controller.lte_prior_mbps = " << format_double(cfg.controller.lte_prior_mbps) << "\n"
        << "controller.lte_decay_per_tick = " << format_double(cfg.controller.lte_decay_per_tick)
        << "\n"
        << "controller.forecast_floor_mbps = "
        << format_double(cfg.controller.forecast_floor_mbps) << "\n"
        << "controller.predictor_init = "
        << (cfg.controller.predictor_init == HwInit::slope_init ? "slope_init" : "literal")
        << "\n"
        << "sim.mss_bytes = " << format_double(cfg.sim.mss_bytes) << "\n"
        << "sim.initial_window_packets = " << format_double(cfg.sim.initial_window_packets)
        << "\n"
        << "sim.rtt_wifi_ms = " << format_double(cfg.sim.rtt_wifi_ms) << "\n"
        << "sim.rtt_lte_ms = " << format_double(cfg.sim.rtt_lte_ms) << "\n"
        << "sim.cwnd_cap_bdp_factor = " << format_double(cfg.sim.cwnd_cap_bdp_factor) << "\n"
        << "sim.rto_floor_ms = " << format_double(cfg.sim.rto_floor_ms) << "\n"
        << "sim.recv_window_bytes = " << format_double(cfg.sim.recv_window_bytes) << "\n"
        << "sim.loss_per_interferer_per_rtt = "
        << format_double(cfg.sim.loss_per_interferer_per_rtt) << "\n"
        << "sim.rtt_inflation_ms_per_interferer = "
        << format_double(cfg.sim.rtt_inflation_ms_per_interferer) << "\n"
        << "sim.handshake_ms = " << format_double(cfg.sim.handshake_ms) << "\n";
}

} // namespace mpenergy
