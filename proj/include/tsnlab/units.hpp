#pragma once

#include <cstdint>

namespace tsnlab {

/// Simulated time and durations, in nanoseconds.
using TimeNs = std::int64_t;

inline constexpr TimeNs kNsPerUs = 1'000;
inline constexpr TimeNs kNsPerMs = 1'000'000;
inline constexpr TimeNs kNsPerSec = 1'000'000'000;

constexpr TimeNs from_us(double us) { return static_cast<TimeNs>(us * kNsPerUs + (us >= 0 ? 0.5 : -0.5)); }
constexpr double to_us(TimeNs ns) { return static_cast<double>(ns) / kNsPerUs; }

/// Wire time of `physical_bytes` on a link of `rate_bps`, rounded up to the next ns.
constexpr TimeNs serialization_ns(std::uint64_t physical_bytes, double rate_bps) {
    const double exact = static_cast<double>(physical_bytes) * 8.0 * 1e9 / rate_bps;
    auto whole = static_cast<TimeNs>(exact);
    return (static_cast<double>(whole) < exact) ? whole + 1 : whole;
}

} // namespace tsnlab
