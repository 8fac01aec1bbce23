#include "tsnlab/tc/priority_map.hpp"

#include <stdexcept>

namespace tsnlab::tc {

PriorityMap PriorityMap::qav_default() {
    PriorityMap m;
    m.num_tc = 8;
    m.prio_to_tc = {1, 0, 6, 7, 2, 3, 4, 5};
    // highest classes get the lowest queue numbers
    m.tc_to_queue = {3, 3, 3, 3, 2, 2, 1, 0};
    return m;
}

PriorityMap PriorityMap::experiment() {
    PriorityMap m;
    m.num_tc = 2;
    m.prio_to_tc = {1, 1, 1, 0, 1, 1, 1, 1};
    m.tc_to_queue = {0, 3, 0, 0, 0, 0, 0, 0};
    return m;
}

void PriorityMap::validate() const {
    if (num_tc < 1 || num_tc > 8) throw std::invalid_argument("priority map: num_tc must be in 1..8");
    for (int p = 0; p < 8; ++p) {
        if (prio_to_tc[p] >= num_tc) {
            throw std::invalid_argument("priority map: PCP " + std::to_string(p) + " maps to a missing class");
        }
    }
    for (int tc = 0; tc < num_tc; ++tc) {
        if (tc_to_queue[tc] >= kHardwareQueues) {
            throw std::invalid_argument("priority map: class " + std::to_string(tc) + " maps past queue 3");
        }
    }
}

int prio_classify(std::uint8_t pcp, const PriorityMap& map) { return map.prio_to_tc[pcp & 7]; }

} // namespace tsnlab::tc
