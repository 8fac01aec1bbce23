#pragma once

// Time-aware priority root. Classes with an assisted child get a launch time
// inside their window at enqueue; the rest are gated in software by the
// current mask, without regard to frame length.

#include <vector>

#include "tsnlab/tc/gate_schedule.hpp"
#include "tsnlab/tc/priority_map.hpp"
#include "tsnlab/tc/qdisc.hpp"

namespace tsnlab::tc {

struct TaprioClass {
    QdiscPtr child;
    /// Child is an ETF queue fed with schedule-derived launch times.
    bool txtime_assisted = false;
};

class TaprioQdisc final : public Qdisc {
public:
    TaprioQdisc(PriorityMap map, GateSchedule sched, std::vector<TaprioClass> classes, double link_rate = 1e9);

    void enqueue(Packet p, TimeNs now) override;
    std::optional<Packet> dequeue(TimeNs now, bool link_idle) override;
    std::optional<TimeNs> next_wakeup(TimeNs now) const override;
    std::size_t backlog() const override;

    const GateSchedule& schedule() const { return sched_; }

private:
    PriorityMap map_;
    GateSchedule sched_;
    std::vector<TaprioClass> classes_;
    std::vector<int> order_; ///< classes sorted by hardware queue
    double link_rate_;
};

} // namespace tsnlab::tc
