#include "mpenergy/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <set>
#include <stdexcept>

#include "mpenergy/energy_model.hpp"
#include "mpenergy/errors.hpp"
#include "mpenergy/text_format.hpp"

namespace mpenergy {

PowerLawFit fit_power_law(std::span<const PowerLawSample> samples) {
    if (samples.size() < 2)
        throw fit_error("fit_power_law: need at least 2 samples");
    std::set<double> distinct;
    for (const auto& s : samples) {
        if (!(s.throughput_mbps > 0) || !(s.energy_per_byte_uj > 0))
            throw fit_error("fit_power_law: samples must have positive throughput and energy");
        distinct.insert(s.throughput_mbps);
    }
    if (distinct.size() < 2)
        throw fit_error("fit_power_law: need at least 2 distinct throughputs");

    const double n = static_cast<double>(samples.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& s : samples) {
        const double x = std::log(s.throughput_mbps);
        const double y = std::log(s.energy_per_byte_uj);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = n * sxx - sx * sx;
    const double beta = (n * sxy - sx * sy) / denom;
    const double log_alpha = (sy - beta * sx) / n;

    double ss_res = 0, ss_tot = 0;
    const double y_mean = sy / n;
    for (const auto& s : samples) {
        const double y = std::log(s.energy_per_byte_uj);
        const double y_hat = log_alpha + beta * std::log(s.throughput_mbps);
        ss_res += (y - y_hat) * (y - y_hat);
        ss_tot += (y - y_mean) * (y - y_mean);
    }

    PowerLawFit fit;
    fit.alpha = std::exp(log_alpha);
    fit.beta = beta;
    fit.r2_log = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    fit.n_samples = samples.size();
    return fit;
}

namespace {

double gamma_mse(const ProfileSet& profiles, std::span<const MptcpRun> runs, Direction d,
                 double gamma) {
    double sum = 0;
    for (const auto& r : runs) {
        TransferInput in{r.s_wifi_bytes, r.s_lte_bytes, r.b_wifi_mbps, r.b_lte_mbps, gamma, d};
        const double err = mptcp_energy(profiles, in).e_total_j - r.measured_total_j;
        sum += err * err;
    }
    return sum / static_cast<double>(runs.size());
}

} // namespace

GammaFit fit_gamma(const ProfileSet& profiles, std::span<const MptcpRun> runs, Direction d) {
    if (runs.empty())
        throw fit_error("fit_gamma: need at least 1 run");
    for (const auto& r : runs)
        if (!(r.b_wifi_mbps > 0) || !(r.b_lte_mbps > 0))
            throw fit_error("fit_gamma: runs must have positive throughputs");

    GammaFit fit;
    // 1e-4 grid over (0,1]; keep a coarse curve for diagnostics.
    constexpr int kSteps = 10000;
    double best_g = 1.0, best_mse = gamma_mse(profiles, runs, d, 1.0);
    for (int i = 1; i <= kSteps; ++i) {
        const double g = static_cast<double>(i) / kSteps;
        const double m = gamma_mse(profiles, runs, d, g);
        if (m < best_mse) {
            best_mse = m;
            best_g = g;
        }
        if (i % 100 == 0) fit.mse_curve.emplace_back(g, m);
    }

    // Golden-section shrink around the grid minimum.
    double lo = std::max(1.0 / kSteps, best_g - 1.0 / kSteps);
    double hi = std::min(1.0, best_g + 1.0 / kSteps);
    constexpr double kInvPhi = 0.6180339887498949;
    double a = hi - (hi - lo) * kInvPhi;
    double b = lo + (hi - lo) * kInvPhi;
    double fa = gamma_mse(profiles, runs, d, a);
    double fb = gamma_mse(profiles, runs, d, b);
    while (hi - lo > 1e-9) {
        if (fa < fb) {
            hi = b;
            b = a;
            fb = fa;
            a = hi - (hi - lo) * kInvPhi;
            fa = gamma_mse(profiles, runs, d, a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + (hi - lo) * kInvPhi;
            fb = gamma_mse(profiles, runs, d, b);
        }
    }
    const double refined = 0.5 * (lo + hi);
    const double refined_mse = gamma_mse(profiles, runs, d, refined);
    if (refined_mse < best_mse) {
        best_g = refined;
        best_mse = refined_mse;
    }
    fit.gamma = best_g;
    fit.mse = best_mse;
    return fit;
}

double normalized_rmse(std::span<const double> estimates, std::span<const double> measurements) {
    if (estimates.size() != measurements.size())
        throw std::domain_error("normalized_rmse: length mismatch");
    if (estimates.empty())
        throw std::domain_error("normalized_rmse: empty input");
    double se = 0, mean = 0;
    for (size_t i = 0; i < estimates.size(); ++i) {
        const double d = estimates[i] - measurements[i];
        se += d * d;
        mean += measurements[i];
    }
    mean /= static_cast<double>(measurements.size());
    if (!(mean > 0))
        throw std::domain_error("normalized_rmse: mean measurement must be > 0");
    return std::sqrt(se / static_cast<double>(estimates.size())) / mean;
}

namespace {

std::vector<std::vector<std::string>> read_rows(std::istream& in, const std::string& source_name,
                                                const std::vector<std::string>& header,
                                                std::vector<int>* rownums) {
    std::string line;
    int lineno = 0;
    bool saw_header = false;
    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto cells = split_csv_row(t);
        if (!saw_header) {
            if (cells != header) {
                std::string want;
                for (size_t i = 0; i < header.size(); ++i)
                    want += (i ? "," : "") + header[i];
                throw parse_error(source_name + ":" + std::to_string(lineno) +
                                  ": expected header '" + want + "'");
            }
            saw_header = true;
            continue;
        }
        if (cells.size() != header.size())
            throw parse_error(source_name + ":" + std::to_string(lineno) + ": expected " +
                              std::to_string(header.size()) + " columns, got " +
                              std::to_string(cells.size()));
        rows.push_back(std::move(cells));
        rownums->push_back(lineno);
    }
    if (!saw_header)
        throw parse_error(source_name + ": empty file (missing header)");
    return rows;
}

} // namespace

PowerLawTable load_power_law_csv(std::istream& in, const std::string& source_name) {
    std::vector<int> rownums;
    auto rows = read_rows(in, source_name,
                          {"direction", "interface", "throughput_mbps", "energy_per_byte_uj"},
                          &rownums);
    PowerLawTable table;
    for (size_t i = 0; i < rows.size(); ++i) {
        const std::string where = source_name + ":" + std::to_string(rownums[i]);
        const Direction d = direction_from_string(rows[i][0]);
        const Iface ifc = iface_from_string(rows[i][1]);
        PowerLawSample s;
        s.throughput_mbps = parse_double(rows[i][2], where);
        s.energy_per_byte_uj = parse_double(rows[i][3], where);
        if (!(s.throughput_mbps > 0) || !(s.energy_per_byte_uj > 0))
            throw parse_error(where + ": throughput and energy must be positive");
        table[{ifc, d}].push_back(s);
    }
    return table;
}

GammaTable load_gamma_csv(std::istream& in, const std::string& source_name) {
    std::vector<int> rownums;
    auto rows = read_rows(in, source_name,
                          {"direction", "s_wifi", "s_lte", "b_wifi", "b_lte", "total_j"},
                          &rownums);
    GammaTable table;
    for (size_t i = 0; i < rows.size(); ++i) {
        const std::string where = source_name + ":" + std::to_string(rownums[i]);
        const Direction d = direction_from_string(rows[i][0]);
        MptcpRun r;
        r.s_wifi_bytes = parse_double(rows[i][1], where);
        r.s_lte_bytes = parse_double(rows[i][2], where);
        r.b_wifi_mbps = parse_double(rows[i][3], where);
        r.b_lte_mbps = parse_double(rows[i][4], where);
        r.measured_total_j = parse_double(rows[i][5], where);
        if (!(r.b_wifi_mbps > 0) || !(r.b_lte_mbps > 0))
            throw parse_error(where + ": throughputs must be positive");
        table[d].push_back(r);
    }
    return table;
}

} // namespace mpenergy
