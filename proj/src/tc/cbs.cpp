#include "tsnlab/tc/cbs.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tsnlab::tc {

namespace {

// Rounding slack when comparing a recovered credit against zero.
constexpr double kCreditEps = 1e-6;

double bits_over(double rate_bps, TimeNs dt) { return rate_bps * static_cast<double>(dt) / 1e9; }

} // namespace

void CbsParams::validate() const {
    if (!(link_rate > 0)) throw std::invalid_argument("cbs: link rate must be positive");
    if (!(idle_slope > 0) || idle_slope > link_rate) throw std::invalid_argument("cbs: idle slope must be in (0, link rate]");
    if (std::abs(send_slope - (idle_slope - link_rate)) > 1e-6 * link_rate) {
        throw std::invalid_argument("cbs: send slope must equal idle slope minus link rate");
    }
    if (lo_credit > 0 || hi_credit < 0) throw std::invalid_argument("cbs: credits must bracket zero");
}

CbsParams cbs_params_from_reservation(double link_rate, double reserved_bps, double max_frame_bits,
                                      double max_interference_bits, bool reset_on_empty) {
    if (!(reserved_bps > 0) || reserved_bps > link_rate) {
        throw std::invalid_argument("cbs: reservation " + std::to_string(reserved_bps) + " b/s outside (0, " +
                                    std::to_string(link_rate) + "]");
    }
    CbsParams p;
    p.link_rate = link_rate;
    p.idle_slope = reserved_bps;
    p.send_slope = reserved_bps - link_rate;
    p.hi_credit = std::ceil(max_interference_bits * p.idle_slope / link_rate);
    p.lo_credit = std::floor(max_frame_bits * p.send_slope / link_rate);
    if (p.lo_credit == 0) p.lo_credit = 0; // no -0
    p.reset_on_empty = reset_on_empty;
    return p;
}

double cbs_credit_at(const CbsState& s, const CbsParams& p, TimeNs now) {
    if (now <= s.last_update) return s.credit;
    const TimeNs dt = now - s.last_update;
    if (!s.queue.empty()) return std::min(p.hi_credit, s.credit + bits_over(p.idle_slope, dt));
    if (p.reset_on_empty) return 0;
    if (s.credit < 0) return std::min(0.0, s.credit + bits_over(p.idle_slope, dt));
    return s.credit;
}

void cbs_advance(CbsState& s, const CbsParams& p, TimeNs now) {
    if (now < s.last_update) {
        if (now >= s.tx_start) return; // still sending our own frame
        throw std::logic_error("cbs: time went backwards");
    }
    s.credit = cbs_credit_at(s, p, now);
    s.last_update = now;
}

void cbs_enqueue(CbsState& s, const CbsParams& p, Packet pkt, TimeNs now) {
    cbs_advance(s, p, now);
    if (s.queue.empty() && s.credit > 0) s.credit = 0;
    pkt.enqueued_at = now;
    s.queue.push_back(std::move(pkt));
}

std::optional<Packet> cbs_try_dequeue(CbsState& s, const CbsParams& p, TimeNs now, bool link_idle) {
    cbs_advance(s, p, now);
    if (s.queue.empty() || !link_idle || now < s.last_update) return std::nullopt;
    if (s.credit < -kCreditEps) return std::nullopt;
    Packet pkt = std::move(s.queue.front());
    s.queue.pop_front();
    const TimeNs tx = serialization_ns(pkt.physical_bytes, p.link_rate);
    s.credit = std::max(p.lo_credit, std::max(s.credit, 0.0) + bits_over(p.send_slope, tx));
    s.tx_start = now;
    s.last_update = now + tx;
    return pkt;
}

std::optional<TimeNs> cbs_next_eligible(const CbsState& s, const CbsParams& p, TimeNs now) {
    if (s.queue.empty()) return std::nullopt;
    const TimeNs from = std::max(now, s.last_update);
    const double credit = cbs_credit_at(s, p, from);
    TimeNs t = from;
    if (credit < -kCreditEps) t += static_cast<TimeNs>(std::ceil(-credit * 1e9 / p.idle_slope));
    if (t <= now) return std::nullopt;
    return t;
}

CbsShaper::CbsShaper(CbsParams params, std::size_t limit) : params_(params), limit_(limit) { params_.validate(); }

void CbsShaper::enqueue(Packet p, TimeNs now) {
    if (state_.queue.size() >= limit_) {
        cbs_advance(state_, params_, now);
        drop(std::move(p), DropReason::QueueOverflow, now);
        return;
    }
    cbs_enqueue(state_, params_, std::move(p), now);
}

std::optional<Packet> CbsShaper::dequeue(TimeNs now, bool link_idle) {
    return cbs_try_dequeue(state_, params_, now, link_idle);
}

std::optional<TimeNs> CbsShaper::next_wakeup(TimeNs now) const { return cbs_next_eligible(state_, params_, now); }

} // namespace tsnlab::tc
