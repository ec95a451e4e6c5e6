#include "mpenergy/efficiency_map.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "mpenergy/energy_model.hpp"
#include "mpenergy/errors.hpp"
#include "mpenergy/text_format.hpp"

namespace mpenergy {

double both_paths_per_byte_cost(const ProfileSet& profiles, double b_wifi, double b_lte,
                                double gamma, Direction d) {
    const double pw = per_byte_cost(profiles.wifi, d, b_wifi);
    const double pl = per_byte_cost(profiles.lte, d, b_lte);
    return gamma * (pw * b_wifi + pl * b_lte) / (b_wifi + b_lte);
}

double total_energy_ratio(const ProfileSet& profiles, const RegionQuery& q) {
    if (!q.file_size_bytes || !(*q.file_size_bytes > 0))
        throw std::domain_error("total_energy_ratio: file_size must be present and > 0");
    const double s = *q.file_size_bytes;
    const double share_w = q.b_wifi_mbps / (q.b_wifi_mbps + q.b_lte_mbps);
    TransferInput in{s * share_w, s * (1.0 - share_w), q.b_wifi_mbps, q.b_lte_mbps,
                     q.gamma, q.direction};
    const double e_both = mptcp_energy(profiles, in, true, true).e_total_j;
    const double e_wifi = single_path_energy(profiles.wifi, q.direction, s, q.b_wifi_mbps, true);
    const double e_lte = single_path_energy(profiles.lte, q.direction, s, q.b_lte_mbps, true);
    return e_both / std::min(e_wifi, e_lte);
}

double per_byte_ratio(const ProfileSet& profiles, double b_wifi, double b_lte, double gamma,
                      Direction d) {
    const double pw = per_byte_cost(profiles.wifi, d, b_wifi);
    const double pl = per_byte_cost(profiles.lte, d, b_lte);
    return both_paths_per_byte_cost(profiles, b_wifi, b_lte, gamma, d) / std::min(pw, pl);
}

bool wifi_only_region(const ProfileSet& profiles, double b_wifi, double b_lte) {
    const Direction d = Direction::down;
    const double pw = per_byte_cost(profiles.wifi, d, b_wifi);
    return pw <= both_paths_per_byte_cost(profiles, b_wifi, b_lte, profiles.gamma_down, d);
}

const char* to_string(RegionLabel l) {
    switch (l) {
    case RegionLabel::wifi_only: return "wifi_only";
    case RegionLabel::lte_only: return "lte_only";
    case RegionLabel::both: return "both";
    }
    return "?";
}

RegionLabel region_label_from_string(const std::string& s) {
    if (s == "wifi_only") return RegionLabel::wifi_only;
    if (s == "lte_only") return RegionLabel::lte_only;
    if (s == "both") return RegionLabel::both;
    throw parse_error("unknown region label '" + s + "'");
}

namespace {

std::vector<double> axis_values(double lo, double hi, double step) {
    std::vector<double> v;
    // Tolerate one part in 1e9 of accumulation slack at the top end.
    for (int i = 0;; ++i) {
        const double x = lo + i * step;
        if (x > hi * (1.0 + 1e-9)) break;
        v.push_back(x);
    }
    return v;
}

} // namespace

RegionGrid export_grid(const ProfileSet& profiles, const GridSpec& spec, const GridParams& params) {
    if (!(spec.step > 0))
        throw std::domain_error("export_grid: step must be > 0");
    RegionGrid g;
    g.spec = spec;
    g.mode = params.mode;
    g.b_wifi_values = axis_values(spec.b_wifi_min, spec.b_wifi_max, spec.step);
    g.b_lte_values = axis_values(spec.b_lte_min, spec.b_lte_max, spec.step);
    if (g.b_wifi_values.empty() || g.b_lte_values.empty())
        throw std::domain_error("export_grid: empty axis range");
    g.n_wifi = g.b_wifi_values.size();
    g.n_lte = g.b_lte_values.size();
    g.ratio.reserve(g.n_wifi * g.n_lte);
    g.label.reserve(g.n_wifi * g.n_lte);

    const Direction d = params.direction;
    const double gamma = params.gamma > 0 ? params.gamma : profiles.gamma(d);
    if (params.mode == GridMode::total && (!params.file_size_bytes || !(*params.file_size_bytes > 0)))
        throw std::domain_error("export_grid: total mode requires a file size");

    for (double bw : g.b_wifi_values) {
        for (double bl : g.b_lte_values) {
            if (params.mode == GridMode::total) {
                const double s = *params.file_size_bytes;
                RegionQuery q{bw, bl, s, gamma, d};
                g.ratio.push_back(total_energy_ratio(profiles, q));
                const double e_wifi = single_path_energy(profiles.wifi, d, s, bw, true);
                const double e_lte = single_path_energy(profiles.lte, d, s, bl, true);
                const double e_best = std::min(e_wifi, e_lte);
                const double share_w = bw / (bw + bl);
                TransferInput in{s * share_w, s * (1.0 - share_w), bw, bl, gamma, d};
                const double e_both = mptcp_energy(profiles, in, true, true).e_total_j;
                if (e_both < e_best)
                    g.label.push_back(RegionLabel::both);
                else
                    g.label.push_back(e_wifi <= e_lte ? RegionLabel::wifi_only
                                                      : RegionLabel::lte_only);
            } else {
                g.ratio.push_back(per_byte_ratio(profiles, bw, bl, gamma, d));
                g.label.push_back(wifi_only_region(profiles, bw, bl) ? RegionLabel::wifi_only
                                                                     : RegionLabel::both);
            }
        }
    }
    return g;
}

void write_grid_csv(std::ostream& out, const RegionGrid& grid) {
    out << "b_wifi_mbps,b_lte_mbps,ratio,label\n";
    for (size_t iw = 0; iw < grid.n_wifi; ++iw)
        for (size_t il = 0; il < grid.n_lte; ++il)
            out << format_double(grid.b_wifi_values[iw]) << ','
                << format_double(grid.b_lte_values[il]) << ','
                << format_double(grid.ratio_at(iw, il)) << ','
                << to_string(grid.label_at(iw, il)) << '\n';
}

RegionGrid parse_grid_csv(std::istream& in, const std::string& source_name) {
    std::string line;
    int lineno = 0;
    bool saw_header = false;
    RegionGrid g;
    std::vector<double> bw_col, bl_col;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty()) continue;
        const std::string where = source_name + ":" + std::to_string(lineno);
        auto cells = split_csv_row(t);
        if (!saw_header) {
            if (cells != std::vector<std::string>{"b_wifi_mbps", "b_lte_mbps", "ratio", "label"})
                throw parse_error(where + ": bad grid header");
            saw_header = true;
            continue;
        }
        if (cells.size() != 4)
            throw parse_error(where + ": expected 4 columns");
        bw_col.push_back(parse_double(cells[0], where));
        bl_col.push_back(parse_double(cells[1], where));
        g.ratio.push_back(parse_double(cells[2], where));
        g.label.push_back(region_label_from_string(cells[3]));
    }
    if (!saw_header || g.ratio.empty())
        throw parse_error(source_name + ": empty grid");

    // Recover the axes from the row ordering (wifi outer, lte inner).
    g.b_lte_values.push_back(bl_col[0]);
    for (size_t i = 1; i < bl_col.size() && bw_col[i] == bw_col[0]; ++i)
        g.b_lte_values.push_back(bl_col[i]);
    g.n_lte = g.b_lte_values.size();
    if (g.ratio.size() % g.n_lte != 0)
        throw parse_error(source_name + ": ragged grid");
    g.n_wifi = g.ratio.size() / g.n_lte;
    for (size_t iw = 0; iw < g.n_wifi; ++iw)
        g.b_wifi_values.push_back(bw_col[iw * g.n_lte]);
    g.spec.b_wifi_min = g.b_wifi_values.front();
    g.spec.b_wifi_max = g.b_wifi_values.back();
    g.spec.b_lte_min = g.b_lte_values.front();
    g.spec.b_lte_max = g.b_lte_values.back();
    g.spec.step = g.n_lte > 1 ? g.b_lte_values[1] - g.b_lte_values[0] : 1.0;
    return g;
}

} // namespace mpenergy
