#pragma once

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mpenergy/radio_profile.hpp"

namespace mpenergy {

/// One measurement point for the per-byte power law of one interface+direction.
struct PowerLawSample {
    double throughput_mbps = 0;
    double energy_per_byte_uj = 0;
};

struct PowerLawFit {
    double alpha = 0;
    double beta = 0;
    double r2_log = 0;   // coefficient of determination in log-log space
    size_t n_samples = 0;
};

/// Least-squares fit of log(P) = log(alpha) + beta*log(B).
/// Needs at least two samples with distinct throughputs; all values positive.
PowerLawFit fit_power_law(std::span<const PowerLawSample> samples);

/// One measured two-path transfer for gamma fitting.
struct MptcpRun {
    double s_wifi_bytes = 0;
    double s_lte_bytes = 0;
    double b_wifi_mbps = 0;
    double b_lte_mbps = 0;
    double measured_total_j = 0;
};

struct GammaFit {
    double gamma = 0;
    double mse = 0;
    std::vector<std::pair<double, double>> mse_curve;  // (gamma, mse) on the coarse grid
};

/// argmin over gamma in (0,1] of the mean squared error between the model
/// total and the measured totals: 1e-4 grid scan followed by golden-section
/// refinement around the grid minimum. Deterministic.
GammaFit fit_gamma(const ProfileSet& profiles, std::span<const MptcpRun> runs, Direction d);

/// RMSE between estimates and measurements, divided by the mean measurement.
/// Lengths must match and be nonzero; the mean must be positive.
double normalized_rmse(std::span<const double> estimates, std::span<const double> measurements);

// --- measurement CSV ---
// power-law rows:  direction,interface,throughput_mbps,energy_per_byte_uj
// gamma rows:      direction,s_wifi,s_lte,b_wifi,b_lte,total_j
// Header row required; parse errors carry the row number.

using PowerLawTable = std::map<std::pair<Iface, Direction>, std::vector<PowerLawSample>>;
using GammaTable = std::map<Direction, std::vector<MptcpRun>>;

PowerLawTable load_power_law_csv(std::istream& in, const std::string& source_name = "csv");
GammaTable load_gamma_csv(std::istream& in, const std::string& source_name = "csv");

} // namespace mpenergy
