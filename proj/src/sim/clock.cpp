#include "tsnlab/sim/clock.hpp"

#include <algorithm>
#include <stdexcept>

namespace tsnlab::sim {

HostClock::HostClock(ClockParams params, bool grandmaster, std::uint64_t seed)
    : params_(params), grandmaster_(grandmaster), rng_(seed) {
    if (params_.hw_bound < 0 || params_.sys_bound < 0 || params_.update_interval <= 0) {
        throw std::invalid_argument("clock: bounds must be >= 0 and the update interval > 0");
    }
    hw_.bound = grandmaster ? 0 : params_.hw_bound;
    sys_.bound = grandmaster ? 0 : params_.sys_bound;
    hw_.value = rng_.uniform_int(-hw_.bound / 2, hw_.bound / 2);
    sys_.value = rng_.uniform_int(-sys_.bound / 2, sys_.bound / 2);
    history_.push_back({hw_.value, sys_.value});
}

void HostClock::step(Walk& w) {
    if (w.bound == 0) return;
    const TimeNs stride = std::max<TimeNs>(1, w.bound / 8);
    TimeNs v = w.value + rng_.uniform_int(-stride, stride);
    // reflect at the bounds
    if (v > w.bound) v = 2 * w.bound - v;
    if (v < -w.bound) v = -2 * w.bound - v;
    w.value = v;
}

const HostClock::Offsets& HostClock::at_epoch(std::int64_t e) {
    while (static_cast<std::int64_t>(history_.size()) <= e) {
        step(hw_);
        step(sys_);
        history_.push_back({hw_.value, sys_.value});
    }
    return history_[static_cast<std::size_t>(e)];
}

TimeNs HostClock::hw_offset(TimeNs true_time) { return at_epoch(epoch_of(true_time)).hw; }

TimeNs HostClock::sys_offset(TimeNs true_time) { return at_epoch(epoch_of(true_time)).sys; }

TimeNs HostClock::invert(TimeNs local, TimeNs now, TimeNs Offsets::*which) {
    // The offset is constant inside an epoch, so each epoch either contains the
    // crossing, starts past it (the clock stepped over `local`) or ends before it.
    for (std::int64_t e = epoch_of(now);; ++e) {
        const TimeNs begin = std::max(now, e * params_.update_interval);
        const TimeNs end = (e + 1) * params_.update_interval;
        const TimeNs t = local - at_epoch(e).*which;
        if (t <= begin) return begin;
        if (t < end) return t;
    }
}

} // namespace tsnlab::sim
