#include "mpenergy/energy_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mpenergy/units.hpp"

namespace mpenergy {

double per_byte_cost(const RadioProfile& p, Direction d, double mbps) {
    if (!(mbps > 0))
        throw std::domain_error("per_byte_cost: throughput must be > 0 Mbps");
    return p.alpha(d) * std::pow(mbps, p.beta(d));
}

double single_path_energy(const RadioProfile& p, Direction d, double bytes, double mbps,
                          bool include_fixed) {
    if (bytes < 0)
        throw std::domain_error("single_path_energy: size must be >= 0");
    double e = joules_from_microjoules(per_byte_cost(p, d, mbps) * bytes);
    if (include_fixed) e += p.fixed_overhead_j();
    return e;
}

double overlap_ratio(double s_wifi, double s_lte, double b_wifi, double b_lte) {
    if (!(b_wifi > 0) || !(b_lte > 0))
        throw std::domain_error("overlap_ratio: throughputs must be > 0");
    if (s_wifi < 0 || s_lte < 0)
        throw std::domain_error("overlap_ratio: sizes must be >= 0");
    if (s_wifi == 0 && s_lte == 0)
        throw std::domain_error("overlap_ratio: undefined when both sizes are zero");
    if (s_wifi == 0 || s_lte == 0) return 0.0;
    const double t_wifi = s_wifi / b_wifi;
    const double t_lte = s_lte / b_lte;
    return std::min(t_wifi, t_lte) / std::max(t_wifi, t_lte);
}

TransferEstimate mptcp_energy(const ProfileSet& profiles, const TransferInput& in) {
    return mptcp_energy(profiles, in, in.s_wifi_bytes > 0, in.s_lte_bytes > 0);
}

TransferEstimate mptcp_energy(const ProfileSet& profiles, const TransferInput& in,
                              bool wifi_established, bool lte_established) {
    if (!(in.gamma > 0 && in.gamma <= 1))
        throw std::domain_error("mptcp_energy: gamma must be in (0,1]");
    TransferEstimate est;
    est.in = in;
    est.theta = overlap_ratio(in.s_wifi_bytes, in.s_lte_bytes, in.b_wifi_mbps, in.b_lte_mbps);

    const double sum_uj =
        per_byte_cost(profiles.wifi, in.direction, in.b_wifi_mbps) * in.s_wifi_bytes +
        per_byte_cost(profiles.lte, in.direction, in.b_lte_mbps) * in.s_lte_bytes;
    est.e_transfer_j =
        joules_from_microjoules(sum_uj) * (1.0 - est.theta + in.gamma * est.theta);

    est.e_total_j = est.e_transfer_j;
    if (wifi_established) est.e_total_j += profiles.wifi.fixed_overhead_j();
    if (lte_established) est.e_total_j += profiles.lte.fixed_overhead_j();
    return est;
}

} // namespace mpenergy
