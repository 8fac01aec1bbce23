#include "tsnlab/tc/prio.hpp"

#include <algorithm>

namespace tsnlab::tc {

PrioQdisc::PrioQdisc(PriorityMap map, std::array<QdiscPtr, kHardwareQueues> children)
    : map_(map), children_(std::move(children)) {
    map_.validate();
    for (auto& c : children_) {
        if (!c) c = std::make_unique<FifoQueue>();
    }
}

void PrioQdisc::enqueue(Packet p, TimeNs now) {
    auto& c = *children_[map_.queue_for_pcp(p.pcp)];
    c.enqueue(std::move(p), now);
    adopt_drops(c, drops_);
}

std::optional<Packet> PrioQdisc::dequeue(TimeNs now, bool link_idle) {
    std::optional<Packet> out;
    for (auto& c : children_) {
        out = c->dequeue(now, link_idle);
        adopt_drops(*c, drops_);
        if (out) break;
    }
    return out;
}

std::optional<TimeNs> PrioQdisc::next_wakeup(TimeNs now) const {
    std::optional<TimeNs> best;
    for (const auto& c : children_) {
        if (auto t = c->next_wakeup(now); t && (!best || *t < *best)) best = t;
    }
    return best;
}

std::size_t PrioQdisc::backlog() const {
    std::size_t n = 0;
    for (const auto& c : children_) n += c->backlog();
    return n;
}

} // namespace tsnlab::tc
