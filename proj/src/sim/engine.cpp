#include "tsnlab/sim/engine.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace tsnlab::sim {

namespace {

void fnv_mix(std::uint64_t& h, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
        h ^= (v >> (8 * i)) & 0xff;
        h *= 0x100000001b3ull;
    }
}

} // namespace

bool Engine::later(const Item& a, const Item& b) {
    if (a.ev.time != b.ev.time) return a.ev.time > b.ev.time;
    return a.ev.seq > b.ev.seq;
}

std::uint64_t Engine::schedule(TimeNs time, EventKind kind, int target, Action action) {
    if (time < now_) {
        throw std::logic_error("engine: event at " + std::to_string(time) + " is before now " + std::to_string(now_));
    }
    const std::uint64_t seq = next_seq_++;
    heap_.push_back({{time, seq, kind, target}, std::move(action)});
    std::push_heap(heap_.begin(), heap_.end(), later);
    return seq;
}

std::size_t Engine::run_until(TimeNs t_end) {
    if (t_end < now_) throw std::logic_error("engine: run_until into the past");
    std::size_t n = 0;
    while (!heap_.empty() && heap_.front().ev.time <= t_end) {
        std::pop_heap(heap_.begin(), heap_.end(), later);
        Item item = std::move(heap_.back());
        heap_.pop_back();
        now_ = item.ev.time;
        fnv_mix(digest_, static_cast<std::uint64_t>(item.ev.time));
        fnv_mix(digest_, item.ev.seq);
        fnv_mix(digest_, static_cast<std::uint64_t>(item.ev.kind));
        fnv_mix(digest_, static_cast<std::uint64_t>(item.ev.target));
        if (observer_) observer_(item.ev);
        ++executed_;
        ++n;
        if (item.action) item.action();
    }
    now_ = t_end;
    return n;
}

} // namespace tsnlab::sim
