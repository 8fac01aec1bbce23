#pragma once

// Stochastic and physical parameters of the simulated testbed.

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include "tsnlab/units.hpp"

namespace tsnlab::sim {

/// splitmix64 of (seed, stream): independent generator seeds per consumer.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream);

class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }
    /// Uniform in [0, 1).
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    /// Uniform integer in [lo, hi].
    TimeNs uniform_int(TimeNs lo, TimeNs hi);

private:
    std::mt19937_64 eng_;
};

struct SchedLatencyModel {
    TimeNs base_lo = 5 * kNsPerUs;
    TimeNs base_hi = 40 * kNsPerUs;
    double tail_prob = 0;
    TimeNs tail_max = 130 * kNsPerUs;

    static SchedLatencyModel constant(TimeNs v) { return {v, v, 0.0, v}; }
    void validate() const;
};

/// With probability tail_prob uniform in (base_hi, tail_max], otherwise uniform in [base_lo, base_hi].
TimeNs sample_wake_delay(const SchedLatencyModel& m, Rng& rng);

struct Link {
    double rate_bps = 1e9;
    TimeNs propagation = 500;

    TimeNs serialization(std::size_t physical_bytes) const { return serialization_ns(physical_bytes, rate_bps); }
};

struct BridgeLatency {
    TimeNs fixed = 29 * kNsPerUs;
    TimeNs spread = 4 * kNsPerUs;

    TimeNs sample(Rng& rng) const { return fixed + (spread > 0 ? rng.uniform_int(0, spread) : 0); }
};

struct ClockParams {
    TimeNs hw_bound = 50;
    TimeNs sys_bound = 2700;
    /// Offsets are piecewise constant between servo updates.
    TimeNs update_interval = 1 * kNsPerMs;
};

struct NoiseProfile {
    std::string name;
    SchedLatencyModel wake;
    /// Delay from frame reception until the socket can read it.
    SchedLatencyModel rx;
    ClockParams clock;
};

/// "none", "e3" or "d". Throws std::invalid_argument for anything else.
NoiseProfile noise_preset(std::string_view name);

struct BeTrafficSpec {
    double rate_mbps = 0;
    std::size_t physical_bytes = 1538;
    std::uint8_t pcp = 0;

    /// Offset of the i-th emission from the generator start.
    TimeNs emission_offset(std::uint64_t i) const;
};

} // namespace tsnlab::sim
