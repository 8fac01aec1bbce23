#include "tsnlab/sim/models.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tsnlab::sim {

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

TimeNs Rng::uniform_int(TimeNs lo, TimeNs hi) {
    if (hi <= lo) return lo;
    const auto span = static_cast<double>(hi - lo + 1);
    return std::min(hi, lo + static_cast<TimeNs>(uniform01() * span));
}

void SchedLatencyModel::validate() const {
    if (base_lo < 0 || base_hi < base_lo) throw std::invalid_argument("latency model: need 0 <= base_lo <= base_hi");
    if (tail_prob < 0 || tail_prob > 1) throw std::invalid_argument("latency model: tail_prob outside [0, 1]");
    if (tail_prob > 0 && tail_max < base_hi) throw std::invalid_argument("latency model: tail_max below base_hi");
}

TimeNs sample_wake_delay(const SchedLatencyModel& m, Rng& rng) {
    if (m.tail_prob > 0 && rng.uniform01() < m.tail_prob) {
        if (m.tail_max <= m.base_hi) return m.base_hi;
        return rng.uniform_int(m.base_hi + 1, m.tail_max);
    }
    return rng.uniform_int(m.base_lo, m.base_hi);
}

NoiseProfile noise_preset(std::string_view name) {
    NoiseProfile n;
    n.name = std::string(name);
    if (name == "none") {
        // A fixed wake latency keeps the thread order of a real host; nothing varies.
        n.wake = SchedLatencyModel::constant(5 * kNsPerUs);
        n.rx = SchedLatencyModel::constant(0);
        n.clock = {0, 0, 1 * kNsPerMs};
    } else if (name == "e3") {
        n.wake = {5 * kNsPerUs, 40 * kNsPerUs, 2e-4, 130 * kNsPerUs};
        n.rx = {1 * kNsPerUs, 4 * kNsPerUs, 1e-4, 100 * kNsPerUs};
        n.clock = {};
    } else if (name == "d") {
        n.wake = {5 * kNsPerUs, 20 * kNsPerUs, 2e-4, 60 * kNsPerUs};
        n.rx = {1 * kNsPerUs, 3 * kNsPerUs, 1e-4, 40 * kNsPerUs};
        n.clock = {};
    } else {
        throw std::invalid_argument("unknown noise profile '" + std::string(name) + "' (expected none, e3 or d)");
    }
    return n;
}

TimeNs BeTrafficSpec::emission_offset(std::uint64_t i) const {
    if (!(rate_mbps > 0)) throw std::invalid_argument("be traffic: rate must be positive");
    const long double bits = static_cast<long double>(physical_bytes) * 8;
    return static_cast<TimeNs>(std::floor(static_cast<long double>(i) * bits * 1e3L / rate_mbps));
}

} // namespace tsnlab::sim
