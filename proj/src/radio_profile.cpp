#include "mpenergy/radio_profile.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "mpenergy/errors.hpp"
#include "mpenergy/text_format.hpp"

namespace mpenergy {

const char* to_string(Direction d) {
    return d == Direction::down ? "down" : "up";
}

const char* to_string(Iface i) {
    switch (i) {
    case Iface::wifi: return "wifi";
    case Iface::lte: return "lte";
    case Iface::hsdpa: return "hsdpa";
    }
    return "?";
}

Direction direction_from_string(const std::string& s) {
    if (s == "down") return Direction::down;
    if (s == "up") return Direction::up;
    throw parse_error("unknown direction '" + s + "' (expected down|up)");
}

Iface iface_from_string(const std::string& s) {
    if (s == "wifi") return Iface::wifi;
    if (s == "lte") return Iface::lte;
    if (s == "hsdpa") return Iface::hsdpa;
    throw parse_error("unknown interface '" + s + "' (expected wifi|lte|hsdpa)");
}

void RadioProfile::validate() const {
    auto bad = [&](const std::string& msg) {
        throw parse_error("profile '" + name + "': " + msg);
    };
    if (!(promotion_duration_s > 0)) bad("promotion_duration_s must be > 0");
    if (!(promotion_energy_j > 0)) bad("promotion_energy_j must be > 0");
    if (!(tail_duration_s > 0)) bad("tail_duration_s must be > 0");
    if (!(tail_energy_j > 0)) bad("tail_energy_j must be > 0");
    if (!(alpha_down > 0)) bad("alpha_down must be > 0");
    if (!(alpha_up > 0)) bad("alpha_up must be > 0");
    if (!(beta_down < 0)) bad("beta_down must be < 0");
    if (!(beta_up < 0)) bad("beta_up must be < 0");
}

const RadioProfile& ProfileSet::get(Iface i) const {
    switch (i) {
    case Iface::wifi: return wifi;
    case Iface::lte: return lte;
    case Iface::hsdpa: return hsdpa;
    }
    return wifi;
}

void ProfileSet::validate() const {
    wifi.validate();
    lte.validate();
    hsdpa.validate();
    if (!(gamma_down > 0 && gamma_down <= 1))
        throw parse_error("gamma.down must be in (0,1]");
    if (!(gamma_up > 0 && gamma_up <= 1))
        throw parse_error("gamma.up must be in (0,1]");
}

ProfileSet default_profiles() {
    ProfileSet p;
    p.wifi = RadioProfile{"wifi", 0.095, 0.040, 0.295, 0.109,
                          4.6750, -0.8179, 3.6135, -0.6617};
    p.lte = RadioProfile{"lte", 0.405, 0.311, 11.490, 2.597,
                         10.0427, -0.8910, 13.3438, -0.8358};
    p.hsdpa = RadioProfile{"hsdpa", 2.098, 1.463, 16.123, 9.873,
                           9.3440, -0.9286, 12.5294, -0.8524};
    p.gamma_down = 0.8485;
    p.gamma_up = 0.8687;
    return p;
}

namespace {

std::map<std::string, double*> profile_fields(ProfileSet& p) {
    std::map<std::string, double*> m;
    auto add = [&](const std::string& prefix, RadioProfile& r) {
        m[prefix + ".promotion_duration_s"] = &r.promotion_duration_s;
        m[prefix + ".promotion_energy_j"] = &r.promotion_energy_j;
        m[prefix + ".tail_duration_s"] = &r.tail_duration_s;
        m[prefix + ".tail_energy_j"] = &r.tail_energy_j;
        m[prefix + ".alpha_down"] = &r.alpha_down;
        m[prefix + ".beta_down"] = &r.beta_down;
        m[prefix + ".alpha_up"] = &r.alpha_up;
        m[prefix + ".beta_up"] = &r.beta_up;
    };
    add("wifi", p.wifi);
    add("lte", p.lte);
    add("hsdpa", p.hsdpa);
    m["gamma.down"] = &p.gamma_down;
    m["gamma.up"] = &p.gamma_up;
    return m;
}

} // namespace

ProfileSet load_profiles(std::istream& in, const std::string& source_name) {
    ProfileSet p = default_profiles();
    auto fields = profile_fields(p);
    for_each_config_line(in, source_name, [&](const std::string& key, const std::string& value,
                                              const std::string& where) {
        auto it = fields.find(key);
        if (it == fields.end()) {
            // Non-profile keys (controller.*, sim.*) share the same files.
            if (key.rfind("controller.", 0) == 0 || key.rfind("sim.", 0) == 0) return;
            throw parse_error(where + ": unknown profile key '" + key + "'");
        }
        *it->second = parse_double(value, where);
    });
    p.validate();
    return p;
}

ProfileSet load_profiles_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open profile config '" + path + "'");
    return load_profiles(in, path);
}

void write_profiles(std::ostream& out, const ProfileSet& p) {
    auto emit = [&](const std::string& prefix, const RadioProfile& r) {
        out << prefix << ".promotion_duration_s = " << format_double(r.promotion_duration_s) << "\n"
            << prefix << ".promotion_energy_j = " << format_double(r.promotion_energy_j) << "\n"
            << prefix << ".tail_duration_s = " << format_double(r.tail_duration_s) << "\n"
            << prefix << ".tail_energy_j = " << format_double(r.tail_energy_j) << "\n"
            << prefix << ".alpha_down = " << format_double(r.alpha_down) << "\n"
            << prefix << ".beta_down = " << format_double(r.beta_down) << "\n"
            << prefix << ".alpha_up = " << format_double(r.alpha_up) << "\n"
            << prefix << ".beta_up = " << format_double(r.beta_up) << "\n";
    };
    emit("wifi", p.wifi);
    emit("lte", p.lte);
    emit("hsdpa", p.hsdpa);
    out << "gamma.down = " << format_double(p.gamma_down) << "\n"
        << "gamma.up = " << format_double(p.gamma_up) << "\n";
}

} // namespace mpenergy
