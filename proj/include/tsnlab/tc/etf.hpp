#pragma once

// Earliest TxTime First: frames sorted by launch time, released delta before it.

#include <map>

#include "tsnlab/tc/qdisc.hpp"

namespace tsnlab::tc {

struct EtfParams {
    TimeNs delta = 200 * kNsPerUs;
    /// Hand frames to the NIC launch stage instead of the wire.
    bool offload = true;
    bool skip_sock_check = false;

    void validate() const;
};

class EtfQueue final : public Qdisc {
public:
    explicit EtfQueue(EtfParams params, std::size_t limit = 1000);

    void enqueue(Packet p, TimeNs now) override;
    std::optional<Packet> dequeue(TimeNs now, bool link_idle) override;
    std::optional<TimeNs> next_wakeup(TimeNs now) const override;
    std::size_t backlog() const override { return q_.size(); }

    const EtfParams& params() const { return params_; }
    std::optional<TimeNs> head_txtime() const;

private:
    void drop_late(TimeNs now);

    EtfParams params_;
    std::size_t limit_;
    std::uint64_t seq_ = 0;
    std::map<std::pair<TimeNs, std::uint64_t>, Packet> q_;
};

} // namespace tsnlab::tc
