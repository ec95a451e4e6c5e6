#pragma once

#include <iosfwd>
#include <string>

namespace mpenergy {

enum class Direction { down, up };
enum class Iface { wifi, lte, hsdpa };

const char* to_string(Direction d);
const char* to_string(Iface i);
Direction direction_from_string(const std::string& s);
Iface iface_from_string(const std::string& s);

/// Power profile of one radio interface: the constant promotion/tail
/// episode costs plus the per-byte transfer cost law P(B) = alpha * B^beta
/// (P in microjoules/byte, B in Mbps), one coefficient pair per direction.
struct RadioProfile {
    std::string name;
    double promotion_duration_s = 0;
    double promotion_energy_j = 0;
    double tail_duration_s = 0;
    double tail_energy_j = 0;
    double alpha_down = 0;
    double beta_down = 0;
    double alpha_up = 0;
    double beta_up = 0;

    /// Promotion + tail energy of one activity episode.
    double fixed_overhead_j() const { return promotion_energy_j + tail_energy_j; }

    double alpha(Direction d) const { return d == Direction::down ? alpha_down : alpha_up; }
    double beta(Direction d) const { return d == Direction::down ? beta_down : beta_up; }

    /// Throws parse_error unless durations/energies are positive and both
    /// betas are negative (per-byte cost must fall with throughput).
    void validate() const;
};

/// The shipped measurement constants for one device, plus the sharing
/// factors gamma that discount summed transfer energy during overlapped
/// two-interface operation.
struct ProfileSet {
    RadioProfile wifi;
    RadioProfile lte;
    RadioProfile hsdpa;
    double gamma_down = 0;
    double gamma_up = 0;

    const RadioProfile& get(Iface i) const;
    double gamma(Direction d) const { return d == Direction::down ? gamma_down : gamma_up; }
    void validate() const;
};

/// Built-in defaults (Galaxy S3 class measurements).
ProfileSet default_profiles();

/// Loads `interface.field = value` overrides on top of the defaults.
/// Unknown keys are an error; the result is validated.
ProfileSet load_profiles(std::istream& in, const std::string& source_name = "profiles");
ProfileSet load_profiles_file(const std::string& path);
void write_profiles(std::ostream& out, const ProfileSet& p);

} // namespace mpenergy
