#pragma once

// Credit-based shaper. Credits are in bits, slopes in bits per second.

#include <deque>
#include <optional>

#include "tsnlab/tc/qdisc.hpp"

namespace tsnlab::tc {

struct CbsParams {
    double link_rate = 1e9;
    double idle_slope = 0;
    double send_slope = 0;
    double hi_credit = 0;
    double lo_credit = 0;
    /// Linux behaviour: the credit is forced to zero whenever the queue is empty.
    /// When false, negative credit recovers toward zero and positive credit is
    /// discarded when a frame arrives at the empty queue.
    bool reset_on_empty = true;

    void validate() const;
};

CbsParams cbs_params_from_reservation(double link_rate, double reserved_bps, double max_frame_bits,
                                      double max_interference_bits, bool reset_on_empty = true);

struct CbsState {
    double credit = 0;
    TimeNs last_update = 0;
    /// Start of the shaper's own transmission; last_update marks its end.
    TimeNs tx_start = 0;
    std::deque<Packet> queue;
};

void cbs_advance(CbsState& s, const CbsParams& p, TimeNs now);
void cbs_enqueue(CbsState& s, const CbsParams& p, Packet pkt, TimeNs now);
std::optional<Packet> cbs_try_dequeue(CbsState& s, const CbsParams& p, TimeNs now, bool link_idle);
/// Credit the shaper would hold at `now` without modifying the state.
double cbs_credit_at(const CbsState& s, const CbsParams& p, TimeNs now);
/// First time after `now` at which the head frame becomes eligible.
std::optional<TimeNs> cbs_next_eligible(const CbsState& s, const CbsParams& p, TimeNs now);

class CbsShaper final : public Qdisc {
public:
    explicit CbsShaper(CbsParams params, std::size_t limit = 1000);

    void enqueue(Packet p, TimeNs now) override;
    std::optional<Packet> dequeue(TimeNs now, bool link_idle) override;
    std::optional<TimeNs> next_wakeup(TimeNs now) const override;
    std::size_t backlog() const override { return state_.queue.size(); }

    const CbsState& state() const { return state_; }
    const CbsParams& params() const { return params_; }

private:
    CbsParams params_;
    std::size_t limit_;
    CbsState state_;
};

} // namespace tsnlab::tc
