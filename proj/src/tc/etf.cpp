#include "tsnlab/tc/etf.hpp"

#include <stdexcept>

namespace tsnlab::tc {

void EtfParams::validate() const {
    if (delta <= 0) throw std::invalid_argument("etf: delta must be positive");
}

EtfQueue::EtfQueue(EtfParams params, std::size_t limit) : params_(params), limit_(limit) { params_.validate(); }

void EtfQueue::enqueue(Packet p, TimeNs now) {
    if (!p.txtime) {
        drop(std::move(p), DropReason::EtfMissingTxtime, now);
        return;
    }
    if (!params_.skip_sock_check && !p.sock_txtime) {
        drop(std::move(p), DropReason::EtfSockCheck, now);
        return;
    }
    if (now > *p.txtime) {
        drop(std::move(p), DropReason::EtfLate, now);
        return;
    }
    if (q_.size() >= limit_) {
        drop(std::move(p), DropReason::QueueOverflow, now);
        return;
    }
    p.enqueued_at = now;
    const TimeNs t = *p.txtime;
    q_.emplace(std::make_pair(t, seq_++), std::move(p));
}

void EtfQueue::drop_late(TimeNs now) {
    while (!q_.empty() && now > q_.begin()->first.first) {
        auto node = q_.extract(q_.begin());
        drop(std::move(node.mapped()), DropReason::EtfLate, now);
    }
}

std::optional<Packet> EtfQueue::dequeue(TimeNs now, bool link_idle) {
    drop_late(now);
    if (q_.empty()) return std::nullopt;
    const TimeNs txtime = q_.begin()->first.first;
    if (now < txtime - params_.delta) return std::nullopt;
    if (!params_.offload && !link_idle) return std::nullopt;
    auto node = q_.extract(q_.begin());
    Packet p = std::move(node.mapped());
    p.launch = params_.offload;
    return p;
}

std::optional<TimeNs> EtfQueue::next_wakeup(TimeNs now) const {
    if (q_.empty()) return std::nullopt;
    const TimeNs release = q_.begin()->first.first - params_.delta;
    if (release > now) return release;
    return std::nullopt;
}

std::optional<TimeNs> EtfQueue::head_txtime() const {
    if (q_.empty()) return std::nullopt;
    return q_.begin()->first.first;
}

} // namespace tsnlab::tc
