#pragma once

namespace mpenergy {

// Throughputs are decimal Mbps (1e6 bits/s), sizes are bytes, per-byte
// costs are microjoules/byte, totals are joules. Every conversion between
// these lives here.

inline constexpr double kBitsPerByte = 8.0;
inline constexpr double kBitsPerMegabit = 1e6;
inline constexpr double kJoulesPerMicrojoule = 1e-6;

/// Seconds needed to move `bytes` at `mbps`.
inline double transfer_seconds(double bytes, double mbps) {
    return bytes * kBitsPerByte / (mbps * kBitsPerMegabit);
}

/// Average rate in Mbps for `bytes` moved over `seconds`.
inline double mbps_from_bytes(double bytes, double seconds) {
    return bytes * kBitsPerByte / (seconds * kBitsPerMegabit);
}

inline double joules_from_microjoules(double uj) {
    return uj * kJoulesPerMicrojoule;
}

} // namespace mpenergy
