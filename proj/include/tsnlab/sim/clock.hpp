#pragma once

// Residual offsets of a host's hardware (PHC) and system clocks relative to
// the grandmaster. Each offset is a bounded random walk that only moves at
// servo updates, so it stays constant between two update instants.

#include <vector>

#include "tsnlab/sim/models.hpp"

namespace tsnlab::sim {

class HostClock {
public:
    HostClock(ClockParams params, bool grandmaster, std::uint64_t seed);

    bool grandmaster() const { return grandmaster_; }

    TimeNs hw_offset(TimeNs true_time);
    TimeNs sys_offset(TimeNs true_time);

    TimeNs phc(TimeNs true_time) { return true_time + hw_offset(true_time); }
    TimeNs sys(TimeNs true_time) { return true_time + sys_offset(true_time); }

    /// Earliest true time >= now at which the PHC reads at least `local`.
    TimeNs true_from_phc(TimeNs local, TimeNs now) { return invert(local, now, &Offsets::hw); }
    TimeNs true_from_sys(TimeNs local, TimeNs now) { return invert(local, now, &Offsets::sys); }

private:
    struct Walk {
        TimeNs bound = 0;
        TimeNs value = 0;
    };
    struct Offsets {
        TimeNs hw = 0;
        TimeNs sys = 0;
    };
    const Offsets& at_epoch(std::int64_t e);
    std::int64_t epoch_of(TimeNs t) const { return t < 0 ? 0 : t / params_.update_interval; }
    TimeNs invert(TimeNs local, TimeNs now, TimeNs Offsets::*which);
    void step(Walk& w);

    ClockParams params_;
    bool grandmaster_;
    Rng rng_;
    Walk hw_, sys_;
    /// Offsets of every epoch generated so far, indexed by epoch.
    std::vector<Offsets> history_;
};

/// Host-local (system clock) reading of `true_time`.
inline TimeNs clock_read(HostClock& c, TimeNs true_time) { return c.sys(true_time); }

} // namespace tsnlab::sim
