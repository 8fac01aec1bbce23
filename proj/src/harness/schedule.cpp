#include "tsnlab/harness/schedule.hpp"

#include <stdexcept>
#include <string>

namespace tsnlab::harness {

tc::GateSchedule build_taprio_schedule(TimeNs cycle, TimeNs offset, TimeNs window, TimeNs guard, TimeNs base_time) {
    if (cycle <= 0 || window <= 0 || guard < 0) {
        throw std::invalid_argument("taprio schedule: cycle and window must be positive, guard non-negative");
    }
    const TimeNs lead = offset - guard;
    const TimeNs rest = cycle - offset - window - guard;
    if (lead < 0) {
        throw std::invalid_argument("taprio schedule: offset " + std::to_string(offset) + " ns is shorter than the guard " +
                                    std::to_string(guard) + " ns");
    }
    if (rest < 0) {
        throw std::invalid_argument("taprio schedule: offset + window + guard exceeds the cycle by " +
                                    std::to_string(-rest) + " ns");
    }

    tc::GateSchedule s;
    s.base_time = base_time;
    auto add = [&](std::uint8_t mask, TimeNs d) {
        if (d > 0) s.entries.push_back({mask, d});
    };
    add(kBestEffortMask, lead);
    add(0x00, guard);
    add(kPriorityMask, window);
    add(0x00, guard);
    add(kBestEffortMask, rest);
    return s;
}

} // namespace tsnlab::harness
