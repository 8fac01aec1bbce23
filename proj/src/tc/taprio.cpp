#include "tsnlab/tc/taprio.hpp"

#include <algorithm>
#include <numeric>

namespace tsnlab::tc {

TaprioQdisc::TaprioQdisc(PriorityMap map, GateSchedule sched, std::vector<TaprioClass> classes, double link_rate)
    : map_(map), sched_(std::move(sched)), classes_(std::move(classes)), link_rate_(link_rate) {
    map_.validate();
    sched_.validate();
    if (classes_.size() != static_cast<std::size_t>(map_.num_tc)) {
        throw std::invalid_argument("taprio: need one child per traffic class");
    }
    for (auto& c : classes_) {
        if (!c.child) c.child = std::make_unique<FifoQueue>();
        if (c.txtime_assisted && !sched_.txtime_assist) {
            throw std::invalid_argument("taprio: assisted class without txtime-assist mode");
        }
    }
    order_.resize(classes_.size());
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(),
                     [this](int a, int b) { return map_.tc_to_queue[a] < map_.tc_to_queue[b]; });
}

void TaprioQdisc::enqueue(Packet p, TimeNs now) {
    const int tc = prio_classify(p.pcp, map_);
    auto& cls = classes_[tc];
    if (cls.txtime_assisted) {
        const TimeNs earliest = std::max(p.txtime.value_or(now), now + sched_.txtime_delay);
        try {
            p.txtime = next_transmit_slot(sched_, tc, earliest, serialization_ns(p.physical_bytes, link_rate_));
        } catch (const NoWindowError&) {
            drop(std::move(p), DropReason::TaprioNoWindow, now);
            return;
        }
        p.sock_txtime = true;
    } else if (open_intervals(sched_, tc).empty()) {
        drop(std::move(p), DropReason::TaprioNoWindow, now);
        return;
    }
    cls.child->enqueue(std::move(p), now);
    adopt_drops(*cls.child, drops_);
}

std::optional<Packet> TaprioQdisc::dequeue(TimeNs now, bool link_idle) {
    const std::uint8_t mask = gate_state(sched_, now);
    for (int tc : order_) {
        auto& cls = classes_[tc];
        std::optional<Packet> p;
        if (cls.txtime_assisted) {
            p = cls.child->dequeue(now, link_idle);
        } else if ((mask >> tc) & 1) {
            p = cls.child->dequeue(now, link_idle);
        }
        adopt_drops(*cls.child, drops_);
        if (p) return p;
    }
    return std::nullopt;
}

std::optional<TimeNs> TaprioQdisc::next_wakeup(TimeNs now) const {
    std::optional<TimeNs> best;
    auto consider = [&](std::optional<TimeNs> t) {
        if (t && *t > now && (!best || *t < *best)) best = t;
    };
    const std::uint8_t mask = gate_state(sched_, now);
    for (std::size_t tc = 0; tc < classes_.size(); ++tc) {
        const auto& cls = classes_[tc];
        if (cls.child->backlog() == 0) continue;
        consider(cls.child->next_wakeup(now));
        if (!cls.txtime_assisted && !((mask >> tc) & 1)) {
            consider(next_gate_open(sched_, static_cast<int>(tc), now));
        }
    }
    return best;
}

std::size_t TaprioQdisc::backlog() const {
    std::size_t n = 0;
    for (const auto& c : classes_) n += c.child->backlog();
    return n;
}

} // namespace tsnlab::tc
