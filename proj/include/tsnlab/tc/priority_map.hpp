#pragma once

#include <array>
#include <cstdint>

namespace tsnlab::tc {

inline constexpr int kHardwareQueues = 4;

struct PriorityMap {
    int num_tc = 8;
    std::array<std::uint8_t, 8> prio_to_tc{};
    std::array<std::uint8_t, 8> tc_to_queue{};

    /// The IEEE 802.1Qav recommendation, TCs spread over four hardware queues.
    static PriorityMap qav_default();
    /// Two classes: PCP 3 is the priority class on queue 0, everything else is BE on queue 3.
    static PriorityMap experiment();

    /// Throws std::invalid_argument when an index is out of range.
    void validate() const;
    int queue_for_pcp(std::uint8_t pcp) const { return tc_to_queue[prio_to_tc[pcp & 7]]; }
};

int prio_classify(std::uint8_t pcp, const PriorityMap& map);

} // namespace tsnlab::tc
