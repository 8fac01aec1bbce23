#pragma once

// Builds the testbed for one configuration and runs it.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "tsnlab/harness/config.hpp"
#include "tsnlab/sim/network.hpp"

namespace tsnlab::harness {

struct TraceRecord {
    std::string run_id;
    std::uint64_t seq = 0;
    metrics::TapPoint point = metrics::TapPoint::PEgress;
    std::int64_t key = 0;
    TimeNs time_ns = 0;
};

struct RunResult {
    metrics::Summary summary;
    std::vector<TimeNs> l_ingress; ///< PHC arrival times at L
    std::vector<TimeNs> p_ingress; ///< PHC arrival times at P
    std::vector<TimeNs> rtts;
    /// P ingress times of the frames the P subscriber delivered.
    std::vector<TimeNs> p_delivered;
    std::map<std::string, std::uint64_t> qdisc_drops; ///< "<node>:<reason>" -> count
    std::uint64_t events = 0;
    std::uint64_t digest = 0;
    std::uint64_t be_emitted = 0;
    std::uint64_t be_received = 0;
    std::vector<TraceRecord> trace;
};

/// Qdisc installed on one egress port for `cfg`.
tc::QdiscPtr make_qdisc(const ExperimentConfig& cfg, sim::PortRole role);

/// One repetition with seed cfg.seed + repetition. Does not fill l_b_us.
RunResult run_once(const ExperimentConfig& cfg, int repetition, bool trace = false);

/// All repetitions, run in parallel and returned in repetition order. Bridged
/// runs are paired with a point-to-point run of the same seed to fill l_b_us.
/// Throws ConfigError before running anything when the config is invalid.
std::vector<RunResult> run_experiment(const ExperimentConfig& cfg, bool trace = false);

/// Repetitions of several configurations, flattened onto one worker pool.
/// Results are grouped per configuration in repetition order.
std::vector<std::vector<RunResult>> run_batch(const std::vector<ExperimentConfig>& cfgs, unsigned threads,
                                              bool trace = false);

/// Runs jobs on up to `threads` workers (0: hardware concurrency).
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& job);

} // namespace tsnlab::harness
