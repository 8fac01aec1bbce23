#pragma once

#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "tsnlab/uadp.hpp"
#include "tsnlab/units.hpp"

namespace tsnlab::tc {

enum class DropReason {
    EtfLate,
    EtfMissingTxtime,
    EtfSockCheck,
    QueueOverflow,
    CodelDrop,
    NicLate,
    TaprioNoWindow,
    Oversize,
};

std::string_view drop_reason_name(DropReason r);

struct Packet {
    std::uint64_t id = 0;
    std::size_t physical_bytes = 0;
    std::uint8_t pcp = 0;
    std::uint32_t flow = 0;
    /// Requested launch time on the sender's clock.
    std::optional<TimeNs> txtime;
    /// The sending socket was opened with SO_TXTIME.
    bool sock_txtime = false;
    /// Released for the NIC launch stage rather than immediate transmission.
    bool launch = false;
    TimeNs enqueued_at = 0;

    std::shared_ptr<const uadp::Frame> frame; ///< null for synthetic cross traffic
    uadp::MacAddress dst;
    int origin = -1;
    /// Application key carried by the frame; 0 when untracked.
    std::int64_t key = 0;
    bool is_opc = false;
    /// Hardware ingress timestamp at the receiving host.
    TimeNs rx_tap = 0;
};

struct DropRecord {
    Packet packet;
    DropReason reason;
    TimeNs time;
};

/// Egress queueing discipline. All times are the owning host's local clock.
class Qdisc {
public:
    virtual ~Qdisc() = default;

    virtual void enqueue(Packet p, TimeNs now) = 0;
    /// Next packet to hand to the device. Packets destined for the wire need
    /// `link_idle`; packets flagged `launch` go to the NIC launch stage regardless.
    virtual std::optional<Packet> dequeue(TimeNs now, bool link_idle) = 0;
    /// Earliest time after `now` at which a dequeue may succeed for timing reasons.
    virtual std::optional<TimeNs> next_wakeup(TimeNs now) const = 0;
    virtual std::size_t backlog() const = 0;

    std::vector<DropRecord> take_drops();

protected:
    void drop(Packet p, DropReason reason, TimeNs now);

    std::vector<DropRecord> drops_;
};

using QdiscPtr = std::unique_ptr<Qdisc>;

/// Tail-drop FIFO (pfifo).
class FifoQueue final : public Qdisc {
public:
    explicit FifoQueue(std::size_t limit = 1000) : limit_(limit) {}

    void enqueue(Packet p, TimeNs now) override;
    std::optional<Packet> dequeue(TimeNs now, bool link_idle) override;
    std::optional<TimeNs> next_wakeup(TimeNs) const override { return std::nullopt; }
    std::size_t backlog() const override { return q_.size(); }

    const Packet* peek() const { return q_.empty() ? nullptr : &q_.front(); }
    std::optional<Packet> pop();

private:
    std::size_t limit_;
    std::deque<Packet> q_;
};

/// Collects drops of a child into the parent's drop list.
void adopt_drops(Qdisc& child, std::vector<DropRecord>& into);

} // namespace tsnlab::tc
