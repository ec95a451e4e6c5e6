#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mpenergy/radio_profile.hpp"

namespace mpenergy {

struct RegionQuery {
    double b_wifi_mbps = 0;
    double b_lte_mbps = 0;
    std::optional<double> file_size_bytes;  // absent for the per-byte map
    double gamma = 1.0;
    Direction direction = Direction::down;
};

/// Steady-state per-byte cost of using both interfaces with bytes split
/// proportionally to throughput (full overlap): gamma times the
/// throughput-weighted mean of the two per-byte costs. Microjoules/byte.
double both_paths_per_byte_cost(const ProfileSet& profiles, double b_wifi, double b_lte,
                                double gamma, Direction d);

/// Two-path connection total (proportional split, fixed overheads on both
/// subflows) divided by the cheaper of the two single-path totals
/// (fixed overheads included). Requires file_size.
double total_energy_ratio(const ProfileSet& profiles, const RegionQuery& q);

/// Per-byte cost of using both interfaces divided by the per-byte cost of
/// the best single interface. No fixed overheads (steady-state transfer).
double per_byte_ratio(const ProfileSet& profiles, double b_wifi, double b_lte, double gamma,
                      Direction d);

/// Decision predicate for the path controller: true iff downloading over
/// WiFi alone costs no more per byte than using both interfaces (ties prefer
/// WiFi-only). Uses the shipped downstream gamma.
bool wifi_only_region(const ProfileSet& profiles, double b_wifi, double b_lte);

enum class RegionLabel { wifi_only, lte_only, both };
const char* to_string(RegionLabel l);
RegionLabel region_label_from_string(const std::string& s);

enum class GridMode { total, per_byte };

struct GridSpec {
    double b_wifi_min = 0.25, b_wifi_max = 20.0;
    double b_lte_min = 0.25, b_lte_max = 20.0;
    double step = 0.25;
};

struct GridParams {
    GridMode mode = GridMode::per_byte;
    std::optional<double> file_size_bytes;  // required in total mode
    double gamma = 0;                       // 0 = use shipped gamma for the direction
    Direction direction = Direction::down;
};

/// Dense ratio/label matrix over the throughput plane. In total mode the
/// label is the cheapest of {wifi_only, lte_only, both} for the given file
/// size; in per-byte mode it is the controller's binary decision
/// {wifi_only, both}. Ratios are normalized by the best single path.
struct RegionGrid {
    GridSpec spec;
    GridMode mode = GridMode::per_byte;
    size_t n_wifi = 0, n_lte = 0;
    std::vector<double> b_wifi_values, b_lte_values;
    std::vector<double> ratio;        // row-major: [i_wifi * n_lte + i_lte]
    std::vector<RegionLabel> label;

    double ratio_at(size_t iw, size_t il) const { return ratio[iw * n_lte + il]; }
    RegionLabel label_at(size_t iw, size_t il) const { return label[iw * n_lte + il]; }
};

RegionGrid export_grid(const ProfileSet& profiles, const GridSpec& spec, const GridParams& params);

/// CSV with header b_wifi_mbps,b_lte_mbps,ratio,label; rows in grid order.
void write_grid_csv(std::ostream& out, const RegionGrid& grid);
RegionGrid parse_grid_csv(std::istream& in, const std::string& source_name = "grid");

} // namespace mpenergy
