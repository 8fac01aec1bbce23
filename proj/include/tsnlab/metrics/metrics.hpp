#pragma once

// Performance indicators computed from tap timestamps: drop rates per
// direction, RTT statistics, inter-arrival spacing (IS) jitter and ECDFs.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tsnlab/units.hpp"

namespace tsnlab::metrics {

enum class TapPoint { PEgress, PIngress, BIngressFromP, BIngressFromL, LIngress, LEgress };

std::string_view tap_name(TapPoint p);

struct TapSample {
    std::int64_t key = 0;
    TimeNs time = 0;
};

struct TapSeries {
    TapPoint point = TapPoint::LIngress;
    std::vector<TapSample> samples;

    std::vector<TimeNs> times() const;
};

/// Keys lost per segment of the loop. Each lost key is counted exactly once.
struct DropCounts {
    std::uint64_t p = 0;
    std::uint64_t l = 0;
    std::uint64_t b_to_l = 0;
    std::uint64_t b_to_p = 0;

    std::uint64_t total() const { return p + l + b_to_l + b_to_p; }
};

/// Percentages of the published count.
struct DropRates {
    double d_p = 0;
    double d_l = 0;
    double d_b_to_l = 0;
    double d_b_to_p = 0;
    double d_sigma = 0;
};

DropRates compute_drop_rates(std::uint64_t published, const DropCounts& counts);

struct RttStats {
    double mean_us = 0;
    double median_us = 0;
    double max_us = 0;
    std::size_t count = 0;
};

RttStats compute_rtt_stats(std::vector<TimeNs> rtts);

struct JitterStats {
    double mean_abs_dev_us = 0; ///< headline value: mean |IS - c|
    double std_us = 0;
    double peak_to_peak_us = 0;
    double max_dev_us = 0;
    std::size_t spacings = 0;
};

/// Jitter of an arrival series against the nominal cycle. Needs two arrivals.
JitterStats compute_jitter(const std::vector<TimeNs>& arrivals, TimeNs cycle);

std::vector<TimeNs> inter_arrival_spacings(const std::vector<TimeNs>& arrivals);

struct EcdfPoint {
    TimeNs deviation_ns = 0; ///< IS - c
    double fraction = 0;
    bool operator==(const EcdfPoint&) const = default;
};

/// ECDF of IS deviations from the cycle; one point per distinct deviation.
std::vector<EcdfPoint> compute_is_ecdf(const std::vector<TimeNs>& arrivals, TimeNs cycle);
/// Same, from spacings that were already pooled.
std::vector<EcdfPoint> ecdf_of_deviations(std::vector<TimeNs> deviations);

struct Summary {
    std::string config_hash;
    std::uint64_t seed = 0;
    int repetition = 0;
    std::string topology;
    std::string host_qdisc;
    std::string bridge_qdisc;
    /// Identifies the experiment apart from topology; two summaries are comparable when equal.
    std::string comparable_key;

    std::uint64_t published = 0;
    std::uint64_t returned = 0;
    DropCounts drops;
    DropRates rates;
    RttStats rtt;
    JitterStats jitter;        ///< at L ingress
    JitterStats jitter_return; ///< at P ingress
    std::uint64_t missed_reads_p = 0;
    std::uint64_t missed_reads_l = 0;
    std::uint64_t late_launches = 0;
    std::optional<double> l_b_us;
};

/// Mean RTT difference between a bridged run and its point-to-point counterpart, in µs.
double estimate_bridge_latency(const Summary& bridged, const Summary& p2p);

/// Which integer multiple of `cycle` a value lies within `tol` of, if any.
std::optional<std::int64_t> near_multiple(TimeNs value, TimeNs cycle, TimeNs tol);

} // namespace tsnlab::metrics
