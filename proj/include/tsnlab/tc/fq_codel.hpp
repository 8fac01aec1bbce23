#pragma once

// Flow-queue CoDel baseline: deficit round robin over hashed flows with a
// per-flow CoDel head-drop controller.

#include <deque>
#include <vector>

#include "tsnlab/tc/qdisc.hpp"

namespace tsnlab::tc {

struct FqCodelParams {
    std::size_t limit = 10240;
    std::size_t flows = 1024;
    std::size_t quantum = 1514;
    TimeNs target = 5 * kNsPerMs;
    TimeNs interval = 100 * kNsPerMs;
    std::size_t mtu = 1514;
};

class FqCodelQdisc final : public Qdisc {
public:
    explicit FqCodelQdisc(FqCodelParams params = {});

    void enqueue(Packet p, TimeNs now) override;
    std::optional<Packet> dequeue(TimeNs now, bool link_idle) override;
    std::optional<TimeNs> next_wakeup(TimeNs) const override { return std::nullopt; }
    std::size_t backlog() const override { return total_; }

    std::uint64_t codel_drops() const { return codel_drops_; }

private:
    struct Flow {
        std::deque<Packet> q;
        std::size_t bytes = 0;
        long deficit = 0;
        bool active = false;
        // CoDel
        std::optional<TimeNs> first_above_time;
        TimeNs drop_next = 0;
        std::uint32_t count = 0;
        std::uint32_t lastcount = 0;
        bool dropping = false;
    };
    struct Pulled {
        std::optional<Packet> p;
        bool ok_to_drop = false;
    };

    Pulled do_dequeue(Flow& f, TimeNs now);
    std::optional<Packet> codel_dequeue(Flow& f, TimeNs now);
    TimeNs control_law(TimeNs t, std::uint32_t count) const;
    void drop_from_fattest(TimeNs now);

    FqCodelParams params_;
    std::vector<Flow> flows_;
    std::deque<std::size_t> new_flows_;
    std::deque<std::size_t> old_flows_;
    std::size_t total_ = 0;
    std::uint64_t codel_drops_ = 0;
};

} // namespace tsnlab::tc
