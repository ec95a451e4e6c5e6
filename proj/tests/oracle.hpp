#pragma once

// Reference evaluations for the energy formulas, written directly from the
// closed-form definitions in extended precision. Test-only: nothing here may
// call into the library under test.

#include <algorithm>
#include <cmath>

namespace oracle {

// Shipped per-byte coefficients (downloads/uploads) and episode overheads.
struct Coeff {
    long double alpha_down, beta_down, alpha_up, beta_up, fixed_j;
};
inline constexpr Coeff kWifi{4.6750L, -0.8179L, 3.6135L, -0.6617L, 0.040L + 0.109L};
inline constexpr Coeff kLte{10.0427L, -0.8910L, 13.3438L, -0.8358L, 0.311L + 2.597L};
inline constexpr Coeff kHsdpa{9.3440L, -0.9286L, 12.5294L, -0.8524L, 1.463L + 9.873L};
inline constexpr long double kGammaDown = 0.8485L;
inline constexpr long double kGammaUp = 0.8687L;

inline long double per_byte_uj(const Coeff& c, bool down, long double mbps) {
    return down ? c.alpha_down * std::pow(mbps, c.beta_down)
                : c.alpha_up * std::pow(mbps, c.beta_up);
}

inline long double single_path_j(const Coeff& c, bool down, long double bytes, long double mbps,
                                 bool fixed) {
    return per_byte_uj(c, down, mbps) * bytes * 1e-6L + (fixed ? c.fixed_j : 0.0L);
}

inline long double overlap(long double s_w, long double s_l, long double b_w, long double b_l) {
    if (s_w == 0 || s_l == 0) return 0.0L;
    const long double tw = s_w / b_w, tl = s_l / b_l;
    return std::min(tw, tl) / std::max(tw, tl);
}

inline long double mptcp_total_j(long double s_w, long double s_l, long double b_w,
                                 long double b_l, long double gamma, bool down) {
    const long double theta = overlap(s_w, s_l, b_w, b_l);
    const long double sum_uj =
        per_byte_uj(kWifi, down, b_w) * s_w + per_byte_uj(kLte, down, b_l) * s_l;
    long double e = sum_uj * 1e-6L * (1.0L - theta + gamma * theta);
    if (s_w > 0) e += kWifi.fixed_j;
    if (s_l > 0) e += kLte.fixed_j;
    return e;
}

// Steady-state per-byte cost of the proportional two-path split.
inline long double both_per_byte_uj(long double b_w, long double b_l, long double gamma) {
    return gamma *
           (per_byte_uj(kWifi, true, b_w) * b_w + per_byte_uj(kLte, true, b_l) * b_l) /
           (b_w + b_l);
}

inline bool wifi_only(long double b_w, long double b_l) {
    return per_byte_uj(kWifi, true, b_w) <= both_per_byte_uj(b_w, b_l, kGammaDown);
}

} // namespace oracle
