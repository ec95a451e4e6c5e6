#pragma once

#include <iosfwd>
#include <string>

#include "mpenergy/controller.hpp"
#include "mpenergy/netsim.hpp"
#include "mpenergy/radio_profile.hpp"

namespace mpenergy {

/// Everything tunable in one place: radio profiles + sharing factors,
/// controller thresholds, transport constants. A config file overrides any
/// subset of keys; flags override the file.
struct AppConfig {
    ProfileSet profiles = default_profiles();
    ControllerParams controller;
    SimParams sim;
};

AppConfig load_app_config(std::istream& in, const std::string& source_name = "config");
AppConfig load_app_config_file(const std::string& path);
void write_app_config(std::ostream& out, const AppConfig& cfg);

} // namespace mpenergy
