#include "tsnlab/tc/fq_codel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tsnlab::tc {

FqCodelQdisc::FqCodelQdisc(FqCodelParams params) : params_(params) {
    if (params_.flows == 0 || params_.limit == 0 || params_.quantum == 0) {
        throw std::invalid_argument("fq_codel: flows, limit and quantum must be positive");
    }
    flows_.resize(params_.flows);
}

void FqCodelQdisc::enqueue(Packet p, TimeNs now) {
    const std::size_t idx = p.flow % params_.flows;
    Flow& f = flows_[idx];
    p.enqueued_at = now;
    f.bytes += p.physical_bytes;
    f.q.push_back(std::move(p));
    ++total_;
    if (!f.active) {
        f.active = true;
        f.deficit = static_cast<long>(params_.quantum);
        new_flows_.push_back(idx);
    }
    if (total_ > params_.limit) drop_from_fattest(now);
}

void FqCodelQdisc::drop_from_fattest(TimeNs now) {
    auto fattest = std::max_element(flows_.begin(), flows_.end(),
                                    [](const Flow& a, const Flow& b) { return a.bytes < b.bytes; });
    Packet p = std::move(fattest->q.front());
    fattest->q.pop_front();
    fattest->bytes -= p.physical_bytes;
    --total_;
    drop(std::move(p), DropReason::QueueOverflow, now);
}

TimeNs FqCodelQdisc::control_law(TimeNs t, std::uint32_t count) const {
    return t + static_cast<TimeNs>(static_cast<double>(params_.interval) / std::sqrt(static_cast<double>(count)));
}

FqCodelQdisc::Pulled FqCodelQdisc::do_dequeue(Flow& f, TimeNs now) {
    Pulled r;
    if (f.q.empty()) {
        f.first_above_time.reset();
        return r;
    }
    r.p = std::move(f.q.front());
    f.q.pop_front();
    f.bytes -= r.p->physical_bytes;
    --total_;
    const TimeNs sojourn = now - r.p->enqueued_at;
    if (sojourn < params_.target || f.bytes <= params_.mtu) {
        f.first_above_time.reset();
    } else if (!f.first_above_time) {
        f.first_above_time = now + params_.interval;
    } else if (now >= *f.first_above_time) {
        r.ok_to_drop = true;
    }
    return r;
}

std::optional<Packet> FqCodelQdisc::codel_dequeue(Flow& f, TimeNs now) {
    auto codel_drop = [&](Packet p) {
        ++codel_drops_;
        drop(std::move(p), DropReason::CodelDrop, now);
    };

    Pulled r = do_dequeue(f, now);
    if (!r.p) {
        f.dropping = false;
        return std::nullopt;
    }
    if (f.dropping) {
        if (!r.ok_to_drop) {
            f.dropping = false;
        }
        while (f.dropping && now >= f.drop_next) {
            codel_drop(std::move(*r.p));
            ++f.count;
            r = do_dequeue(f, now);
            if (!r.p || !r.ok_to_drop) {
                f.dropping = false;
            } else {
                f.drop_next = control_law(f.drop_next, f.count);
            }
        }
    } else if (r.ok_to_drop) {
        codel_drop(std::move(*r.p));
        r = do_dequeue(f, now);
        f.dropping = true;
        const std::uint32_t delta = f.count - f.lastcount;
        f.count = (delta > 1 && now - f.drop_next < 16 * params_.interval) ? delta : 1;
        f.drop_next = control_law(now, f.count);
        f.lastcount = f.count;
    }
    return std::move(r.p);
}

std::optional<Packet> FqCodelQdisc::dequeue(TimeNs now, bool link_idle) {
    if (!link_idle) return std::nullopt;
    while (!new_flows_.empty() || !old_flows_.empty()) {
        const bool from_new = !new_flows_.empty();
        auto& list = from_new ? new_flows_ : old_flows_;
        const std::size_t idx = list.front();
        Flow& f = flows_[idx];
        if (f.deficit <= 0) {
            f.deficit += static_cast<long>(params_.quantum);
            list.pop_front();
            old_flows_.push_back(idx);
            continue;
        }
        auto p = codel_dequeue(f, now);
        if (!p) {
            list.pop_front();
            if (from_new && !old_flows_.empty()) {
                old_flows_.push_back(idx);
            } else {
                f.active = false;
            }
            continue;
        }
        f.deficit -= static_cast<long>(p->physical_bytes);
        return p;
    }
    return std::nullopt;
}

} // namespace tsnlab::tc
