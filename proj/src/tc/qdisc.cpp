#include "tsnlab/tc/qdisc.hpp"

namespace tsnlab::tc {

std::string_view drop_reason_name(DropReason r) {
    switch (r) {
    case DropReason::EtfLate: return "etf_late";
    case DropReason::EtfMissingTxtime: return "etf_missing_txtime";
    case DropReason::EtfSockCheck: return "etf_sock_check";
    case DropReason::QueueOverflow: return "queue_overflow";
    case DropReason::CodelDrop: return "codel";
    case DropReason::NicLate: return "nic_late";
    case DropReason::TaprioNoWindow: return "taprio_no_window";
    case DropReason::Oversize: return "oversize";
    }
    return "?";
}

std::vector<DropRecord> Qdisc::take_drops() {
    std::vector<DropRecord> out;
    out.swap(drops_);
    return out;
}

void Qdisc::drop(Packet p, DropReason reason, TimeNs now) { drops_.push_back({std::move(p), reason, now}); }

void adopt_drops(Qdisc& child, std::vector<DropRecord>& into) {
    auto d = child.take_drops();
    if (d.empty()) return;
    into.insert(into.end(), std::make_move_iterator(d.begin()), std::make_move_iterator(d.end()));
}

void FifoQueue::enqueue(Packet p, TimeNs now) {
    if (q_.size() >= limit_) {
        drop(std::move(p), DropReason::QueueOverflow, now);
        return;
    }
    p.enqueued_at = now;
    q_.push_back(std::move(p));
}

std::optional<Packet> FifoQueue::pop() {
    if (q_.empty()) return std::nullopt;
    Packet p = std::move(q_.front());
    q_.pop_front();
    return p;
}

std::optional<Packet> FifoQueue::dequeue(TimeNs, bool link_idle) {
    if (!link_idle) return std::nullopt;
    return pop();
}

} // namespace tsnlab::tc
