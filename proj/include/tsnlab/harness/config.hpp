#pragma once

// Experiment configuration: a flat `key = value` text file plus overrides.
// Durations are written in microseconds and stored in nanoseconds.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tsnlab/app/pubsub.hpp"

namespace tsnlab::harness {

/// Invalid keys, values or combinations. The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    std::string topology = "p2p";   ///< p2p | bridged
    std::string host_qdisc = "etf"; ///< fq | mqprio | cbs | etf | taprio
    std::string bridge_qdisc = "fq"; ///< fq | mqprio | cbs
    app::AppConfig app;
    /// Unset means: on for etf and taprio, off otherwise.
    std::optional<bool> txtime_mode;

    double idleslope_pct = 110;
    bool cbs_standard = false; ///< cbs_mode = standard | linux
    TimeNs window = 62'500;    ///< taprio priority window
    TimeNs guard = 15'000;
    double be_rate_mbps = 0;
    std::size_t be_frame_bytes = 1538; ///< physical bytes per BE frame
    bool transit_host = false;         ///< BE from a third host through the bridge

    TimeNs bridge_latency = 29'000;
    TimeNs bridge_spread = 4'000;
    bool launch_time = true; ///< NIC launch-time support

    int repetitions = 5;
    std::uint64_t seed = 1;
    std::string noise = "e3"; ///< none | e3 | d
    unsigned threads = 0;     ///< 0: hardware concurrency

    bool txtime() const;
    bool bridged() const { return topology == "bridged"; }

    /// Sets one key from its text form; throws ConfigError.
    void set(const std::string& key, const std::string& value);
    /// Canonical `key=value` lines for every key, in a fixed order.
    std::vector<std::pair<std::string, std::string>> entries() const;
    /// Checks combinations; returns advisory warnings, throws ConfigError.
    std::vector<std::string> validate() const;

    /// FNV-1a of the canonical form without seed and repetitions, as 16 hex digits.
    std::string hash() const;
    /// Canonical form without topology and bridge settings; equal for a bridged
    /// run and its point-to-point counterpart.
    std::string comparable_key() const;
};

/// Parses `key = value` lines. '#' starts a comment; blank lines are ignored.
ExperimentConfig parse_config(std::istream& in, const std::string& origin = "<config>");
ExperimentConfig load_config(const std::string& path);
/// Applies `key=value` overrides in order.
void apply_overrides(ExperimentConfig& cfg, const std::vector<std::string>& overrides);

} // namespace tsnlab::harness
