#pragma once

// Tracks how far each published key travelled around the P -> L -> P loop.
// A key that never returns is charged to the segment after its furthest stage.

#include <cstdint>
#include <vector>

#include "tsnlab/metrics/metrics.hpp"

namespace tsnlab::metrics {

enum class Stage : std::uint8_t {
    None = 0,
    Published,
    PEgress,
    BIngressFromP,
    LIngress,
    LDelivered,
    LPublished,
    LEgress,
    BIngressFromL,
    PIngress,
    Returned,
};

class KeyLedger {
public:
    /// Keys are 1-based and dense.
    void reserve(std::size_t keys);

    void reach(std::int64_t key, Stage stage);
    void on_tap(TapPoint point, std::int64_t key, TimeNs time);
    /// The P subscriber delivered `key` whose ingress tap read `ingress_time`.
    void on_returned(std::int64_t key, TimeNs ingress_time);

    Stage furthest(std::int64_t key) const;
    std::uint64_t published() const { return published_; }
    std::uint64_t returned() const { return returned_; }
    const std::vector<TimeNs>& rtts() const { return rtts_; }
    /// Keys in the order they returned; parallel to rtts().
    const std::vector<std::int64_t>& returned_keys() const { return returned_keys_; }
    /// P ingress times of the returned keys; parallel to returned_keys().
    const std::vector<TimeNs>& returned_times() const { return returned_times_; }

    DropCounts drop_counts() const;

private:
    struct Entry {
        Stage stage = Stage::None;
        bool has_egress = false;
        TimeNs first_egress = 0;
    };
    Entry& at(std::int64_t key);

    std::vector<Entry> entries_;
    std::uint64_t published_ = 0;
    std::uint64_t returned_ = 0;
    std::vector<TimeNs> rtts_;
    std::vector<std::int64_t> returned_keys_;
    std::vector<TimeNs> returned_times_;
};

} // namespace tsnlab::metrics
