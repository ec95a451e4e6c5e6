#pragma once

#include "mpenergy/radio_profile.hpp"

namespace mpenergy {

/// Energy to transfer one byte at throughput `mbps`, in microjoules/byte:
/// alpha * B^beta with the direction's coefficients. Throws std::domain_error
/// unless mbps > 0.
double per_byte_cost(const RadioProfile& p, Direction d, double mbps);

/// Transfer energy in joules for `bytes` at `mbps` over a single interface,
/// plus the promotion+tail overhead when include_fixed is set.
double single_path_energy(const RadioProfile& p, Direction d, double bytes, double mbps,
                          bool include_fixed);

/// Fraction of the transfer during which both interfaces move data
/// simultaneously, approximated from the per-path transfer durations:
/// min(s_w/b_w, s_l/b_l) / max(s_w/b_w, s_l/b_l). Zero when exactly one
/// size is zero; throws std::domain_error when both are zero.
double overlap_ratio(double s_wifi, double s_lte, double b_wifi, double b_lte);

struct TransferInput {
    double s_wifi_bytes = 0;
    double s_lte_bytes = 0;
    double b_wifi_mbps = 0;
    double b_lte_mbps = 0;
    double gamma = 1.0;
    Direction direction = Direction::down;
};

/// Inputs plus the model outputs: overlap ratio theta, transfer energy
/// E_T = (P_w*S_w + P_l*S_l)(1 - theta + gamma*theta), and the connection
/// total E_M = E_T + fixed overheads of the interfaces that were opened.
struct TransferEstimate {
    TransferInput in;
    double theta = 0;
    double e_transfer_j = 0;
    double e_total_j = 0;
};

/// Two-path estimate. An interface contributes its fixed overhead iff its
/// subflow was established; by default that is inferred as "carried bytes".
/// Callers that know a subflow was opened without traffic (the cost is paid
/// on establishment, not on first byte) pass the flags explicitly.
TransferEstimate mptcp_energy(const ProfileSet& profiles, const TransferInput& in);
TransferEstimate mptcp_energy(const ProfileSet& profiles, const TransferInput& in,
                              bool wifi_established, bool lte_established);

} // namespace mpenergy
