#pragma once

#include "tsnlab/tc/gate_schedule.hpp"

namespace tsnlab::harness {

/// Traffic classes of the experiment priority map.
inline constexpr std::uint8_t kPriorityMask = 0x01;
inline constexpr std::uint8_t kBestEffortMask = 0x02;

/// Cycle laid out as {BE o-guard, guard, priority ws, guard, BE rest}. The
/// leading BE window is shortened by the guard so the priority window opens
/// exactly at offset o. Empty BE windows are left out. Throws
/// std::invalid_argument when the pieces do not fit in the cycle.
tc::GateSchedule build_taprio_schedule(TimeNs cycle, TimeNs offset, TimeNs window, TimeNs guard,
                                       TimeNs base_time = 0);

} // namespace tsnlab::harness
