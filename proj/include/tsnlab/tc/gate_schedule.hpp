#pragma once

// Cyclic gate control list shared by TAPRIO and its txtime-assist mode.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tsnlab/units.hpp"

namespace tsnlab::tc {

struct GateEntry {
    std::uint8_t mask = 0; ///< bit i set: class i may transmit
    TimeNs duration = 0;
    bool operator==(const GateEntry&) const = default;
};

struct GateSchedule {
    TimeNs base_time = 0;
    std::vector<GateEntry> entries;
    bool txtime_assist = false;
    TimeNs txtime_delay = 0;
    bool etf_assist = false;

    TimeNs cycle_time() const;
    /// `etf_delta` is the child ETF delta in txtime-assist mode.
    void validate(std::optional<TimeNs> etf_delta = std::nullopt) const;
};

class NoWindowError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Gate mask in force at `t`. Before base_time the schedule is inactive and every gate is open.
std::uint8_t gate_state(const GateSchedule& s, TimeNs t);

/// Earliest t' >= t at which class `tc` is open.
TimeNs next_gate_open(const GateSchedule& s, int tc, TimeNs t);

/// Earliest t' >= t such that class `tc` stays open for all of [t', t' + duration).
TimeNs next_transmit_slot(const GateSchedule& s, int tc, TimeNs t, TimeNs duration);

/// Open intervals of `tc` as [begin, end) offsets within one cycle, adjacent entries merged.
std::vector<std::pair<TimeNs, TimeNs>> open_intervals(const GateSchedule& s, int tc);

} // namespace tsnlab::tc
