#include "tsnlab/tc/gate_schedule.hpp"

#include <algorithm>
#include <string>

namespace tsnlab::tc {

namespace {

TimeNs floor_div(TimeNs a, TimeNs b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

bool is_open(std::uint8_t mask, int tc) { return (mask >> tc) & 1; }

} // namespace

TimeNs GateSchedule::cycle_time() const {
    TimeNs c = 0;
    for (const auto& e : entries) c += e.duration;
    return c;
}

void GateSchedule::validate(std::optional<TimeNs> etf_delta) const {
    if (entries.empty()) throw std::invalid_argument("gate schedule: no entries");
    for (const auto& e : entries) {
        if (e.duration <= 0) throw std::invalid_argument("gate schedule: entry durations must be positive");
    }
    if (txtime_assist && etf_delta && txtime_delay <= *etf_delta) {
        throw std::invalid_argument("gate schedule: txtime delay " + std::to_string(txtime_delay) +
                                    " ns must exceed the ETF delta " + std::to_string(*etf_delta) + " ns");
    }
}

std::uint8_t gate_state(const GateSchedule& s, TimeNs t) {
    if (t < s.base_time) return 0xff;
    TimeNs pos = (t - s.base_time) % s.cycle_time();
    for (const auto& e : s.entries) {
        if (pos < e.duration) return e.mask;
        pos -= e.duration;
    }
    return s.entries.back().mask; // unreachable for a valid schedule
}

std::vector<std::pair<TimeNs, TimeNs>> open_intervals(const GateSchedule& s, int tc) {
    std::vector<std::pair<TimeNs, TimeNs>> out;
    TimeNs at = 0;
    for (const auto& e : s.entries) {
        if (is_open(e.mask, tc)) {
            if (!out.empty() && out.back().second == at) {
                out.back().second = at + e.duration;
            } else {
                out.emplace_back(at, at + e.duration);
            }
        }
        at += e.duration;
    }
    return out;
}

TimeNs next_gate_open(const GateSchedule& s, int tc, TimeNs t) {
    const auto iv = open_intervals(s, tc);
    if (iv.empty()) throw NoWindowError("gate schedule: class " + std::to_string(tc) + " is never open");
    if (t < s.base_time) return t;
    const TimeNs c = s.cycle_time();
    const TimeNs k = floor_div(t - s.base_time, c);
    for (TimeNs cyc = k; cyc <= k + 1; ++cyc) {
        const TimeNs origin = s.base_time + cyc * c;
        for (const auto& [b, e] : iv) {
            if (origin + e > t) return std::max(t, origin + b);
        }
    }
    throw NoWindowError("gate schedule: no window found"); // unreachable
}

TimeNs next_transmit_slot(const GateSchedule& s, int tc, TimeNs t, TimeNs duration) {
    const auto iv = open_intervals(s, tc);
    if (iv.empty()) throw NoWindowError("gate schedule: class " + std::to_string(tc) + " is never open");
    const TimeNs c = s.cycle_time();
    const bool always_open = iv.size() == 1 && iv.front().first == 0 && iv.front().second == c;
    if (always_open || (t < s.base_time && t + duration <= s.base_time)) return t;

    // Windows touching the cycle boundary join with the next cycle's first window.
    TimeNs longest = 0;
    for (const auto& [b, e] : iv) longest = std::max(longest, e - b);
    if (iv.size() > 1 && iv.front().first == 0 && iv.back().second == c) {
        longest = std::max(longest, iv.back().second - iv.back().first + iv.front().second);
    }
    if (longest < duration) {
        throw NoWindowError("gate schedule: no window of class " + std::to_string(tc) + " fits " +
                            std::to_string(duration) + " ns");
    }

    const TimeNs from = std::max(t, s.base_time);
    const TimeNs k = floor_div(from - s.base_time, c);
    std::vector<std::pair<TimeNs, TimeNs>> abs;
    for (TimeNs cyc = k - 1; cyc <= k + 2; ++cyc) {
        const TimeNs origin = s.base_time + cyc * c;
        for (const auto& [b, e] : iv) {
            if (!abs.empty() && abs.back().second == origin + b) {
                abs.back().second = origin + e;
            } else {
                abs.emplace_back(origin + b, origin + e);
            }
        }
    }
    for (const auto& [b, e] : abs) {
        const TimeNs start = std::max(from, b);
        if (start + duration <= e) return start;
    }
    throw NoWindowError("gate schedule: no window found"); // unreachable given `longest`
}

} // namespace tsnlab::tc
