#pragma once

// Discrete-event engine. Events run in (time, seq) order, which makes runs
// reproducible event for event.

#include <cstdint>
#include <functional>
#include <vector>

#include "tsnlab/units.hpp"

namespace tsnlab::sim {

enum class EventKind : std::uint8_t { ThreadWake, TxComplete, FrameArrival, GateChange, Timer };

struct SimEvent {
    TimeNs time = 0;
    std::uint64_t seq = 0;
    EventKind kind = EventKind::Timer;
    int target = -1;
};

class Engine {
public:
    using Action = std::function<void()>;

    TimeNs now() const { return now_; }

    /// Throws std::logic_error for a time before now().
    std::uint64_t schedule(TimeNs time, EventKind kind, int target, Action action);

    /// Executes every event with time <= t_end and leaves now() at t_end.
    std::size_t run_until(TimeNs t_end);

    std::size_t pending() const { return heap_.size(); }
    std::uint64_t executed() const { return executed_; }
    /// FNV-1a over (time, seq, kind, target) of every executed event.
    std::uint64_t digest() const { return digest_; }

    void set_observer(std::function<void(const SimEvent&)> obs) { observer_ = std::move(obs); }

private:
    struct Item {
        SimEvent ev;
        Action action;
    };
    static bool later(const Item& a, const Item& b);

    TimeNs now_ = 0;
    std::uint64_t next_seq_ = 0;
    std::uint64_t executed_ = 0;
    std::uint64_t digest_ = 0xcbf29ce484222325ull;
    std::vector<Item> heap_;
    std::function<void(const SimEvent&)> observer_;
};

} // namespace tsnlab::sim
