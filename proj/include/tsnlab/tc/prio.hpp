#pragma once

// mqprio-style root: PCP -> class -> hardware queue, lowest queue served first.

#include <array>

#include "tsnlab/tc/priority_map.hpp"
#include "tsnlab/tc/qdisc.hpp"

namespace tsnlab::tc {

class PrioQdisc final : public Qdisc {
public:
    /// Missing children default to a FIFO.
    PrioQdisc(PriorityMap map, std::array<QdiscPtr, kHardwareQueues> children = {});

    void enqueue(Packet p, TimeNs now) override;
    std::optional<Packet> dequeue(TimeNs now, bool link_idle) override;
    std::optional<TimeNs> next_wakeup(TimeNs now) const override;
    std::size_t backlog() const override;

    Qdisc& child(int queue) { return *children_.at(queue); }
    const PriorityMap& map() const { return map_; }

private:
    PriorityMap map_;
    std::array<QdiscPtr, kHardwareQueues> children_;
};

} // namespace tsnlab::tc
