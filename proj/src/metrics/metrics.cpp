#include "tsnlab/metrics/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace tsnlab::metrics {

std::string_view tap_name(TapPoint p) {
    switch (p) {
    case TapPoint::PEgress: return "P_egress";
    case TapPoint::PIngress: return "P_ingress";
    case TapPoint::BIngressFromP: return "B_ingress_from_P";
    case TapPoint::BIngressFromL: return "B_ingress_from_L";
    case TapPoint::LIngress: return "L_ingress";
    case TapPoint::LEgress: return "L_egress";
    }
    return "?";
}

std::vector<TimeNs> TapSeries::times() const {
    std::vector<TimeNs> t;
    t.reserve(samples.size());
    for (const auto& s : samples) t.push_back(s.time);
    return t;
}

DropRates compute_drop_rates(std::uint64_t published, const DropCounts& counts) {
    if (published == 0) throw std::invalid_argument("drop rates: nothing was published");
    if (counts.total() > published) throw std::invalid_argument("drop rates: more drops than published keys");
    auto pct = [published](std::uint64_t n) { return 100.0 * static_cast<double>(n) / static_cast<double>(published); };
    DropRates r;
    r.d_p = pct(counts.p);
    r.d_l = pct(counts.l);
    r.d_b_to_l = pct(counts.b_to_l);
    r.d_b_to_p = pct(counts.b_to_p);
    r.d_sigma = r.d_p + r.d_l + r.d_b_to_l + r.d_b_to_p;
    return r;
}

RttStats compute_rtt_stats(std::vector<TimeNs> rtts) {
    RttStats s;
    s.count = rtts.size();
    if (rtts.empty()) return s;
    std::sort(rtts.begin(), rtts.end());
    long double sum = 0;
    for (auto r : rtts) sum += r;
    s.mean_us = static_cast<double>(sum / rtts.size()) / kNsPerUs;
    const auto n = rtts.size();
    const double median_ns = n % 2 ? static_cast<double>(rtts[n / 2])
                                   : (static_cast<double>(rtts[n / 2 - 1]) + static_cast<double>(rtts[n / 2])) / 2;
    s.median_us = median_ns / kNsPerUs;
    s.max_us = to_us(rtts.back());
    return s;
}

std::vector<TimeNs> inter_arrival_spacings(const std::vector<TimeNs>& arrivals) {
    std::vector<TimeNs> is;
    if (arrivals.size() < 2) return is;
    is.reserve(arrivals.size() - 1);
    for (std::size_t i = 1; i < arrivals.size(); ++i) is.push_back(arrivals[i] - arrivals[i - 1]);
    return is;
}

JitterStats compute_jitter(const std::vector<TimeNs>& arrivals, TimeNs cycle) {
    if (arrivals.size() < 2) throw std::invalid_argument("jitter: at least two arrivals are required");
    const auto is = inter_arrival_spacings(arrivals);
    JitterStats j;
    j.spacings = is.size();
    long double abs_sum = 0, sum = 0;
    TimeNs lo = is.front(), hi = is.front(), max_dev = 0;
    for (auto s : is) {
        const TimeNs dev = std::llabs(s - cycle);
        abs_sum += dev;
        sum += s;
        lo = std::min(lo, s);
        hi = std::max(hi, s);
        max_dev = std::max(max_dev, dev);
    }
    const long double mean = sum / is.size();
    long double var = 0;
    for (auto s : is) var += (s - mean) * (s - mean);
    var /= is.size();
    j.mean_abs_dev_us = static_cast<double>(abs_sum / is.size()) / kNsPerUs;
    j.std_us = static_cast<double>(std::sqrt(var)) / kNsPerUs;
    j.peak_to_peak_us = to_us(hi - lo);
    j.max_dev_us = to_us(max_dev);
    return j;
}

std::vector<EcdfPoint> ecdf_of_deviations(std::vector<TimeNs> deviations) {
    std::vector<EcdfPoint> out;
    if (deviations.empty()) return out;
    std::sort(deviations.begin(), deviations.end());
    const double n = static_cast<double>(deviations.size());
    for (std::size_t i = 0; i < deviations.size(); ++i) {
        if (i + 1 < deviations.size() && deviations[i + 1] == deviations[i]) continue;
        out.push_back({deviations[i], static_cast<double>(i + 1) / n});
    }
    return out;
}

std::vector<EcdfPoint> compute_is_ecdf(const std::vector<TimeNs>& arrivals, TimeNs cycle) {
    if (arrivals.size() < 2) throw std::invalid_argument("ecdf: at least two arrivals are required");
    auto is = inter_arrival_spacings(arrivals);
    for (auto& s : is) s -= cycle;
    return ecdf_of_deviations(std::move(is));
}

double estimate_bridge_latency(const Summary& bridged, const Summary& p2p) {
    if (bridged.comparable_key != p2p.comparable_key) {
        throw std::invalid_argument("bridge latency: summaries come from different configurations");
    }
    if (bridged.rtt.count == 0 || p2p.rtt.count == 0) {
        throw std::invalid_argument("bridge latency: a summary has no RTT samples");
    }
    return bridged.rtt.mean_us - p2p.rtt.mean_us;
}

std::optional<std::int64_t> near_multiple(TimeNs value, TimeNs cycle, TimeNs tol) {
    if (cycle <= 0) throw std::invalid_argument("near_multiple: cycle must be positive");
    const auto m = static_cast<std::int64_t>(std::llround(static_cast<double>(value) / static_cast<double>(cycle)));
    if (std::llabs(value - m * cycle) <= tol) return m;
    return std::nullopt;
}

} // namespace tsnlab::metrics
