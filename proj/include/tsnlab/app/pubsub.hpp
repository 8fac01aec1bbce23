#pragma once

// Cyclic PubSub application on hosts P (publisher) and L (loopback). Every
// cycle k runs three threads: subscriber at k*c, user at k*c + 0.3c and
// publisher at k*c + 0.6c, each woken on the system clock plus a sampled
// scheduling latency.

#include <array>
#include <deque>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "tsnlab/metrics/key_ledger.hpp"
#include "tsnlab/sim/network.hpp"

namespace tsnlab::app {

struct AppConfig {
    TimeNs cycle = 250 * kNsPerUs;
    TimeNs offset = 150 * kNsPerUs;
    TimeNs delta = 200 * kNsPerUs;
    int n_vars = 3;
    bool txtime_mode = false;
    TimeNs base_time = 1 * kNsPerSec;
    std::uint64_t packets = 700'000;
    /// Extra cycles after the last publish so in-flight keys can return.
    int drain_cycles = 8;

    /// Throws std::invalid_argument on hard errors; returns advisory warnings.
    std::vector<std::string> validate() const;
    TimeNs end_time() const;
};

enum class Role { Publisher, Loopback };

/// Collects taps and drops of one run.
class RunRecorder final : public sim::SimObserver {
public:
    using TraceSink = std::function<void(metrics::TapPoint, std::int64_t key, TimeNs time)>;

    explicit RunRecorder(std::size_t expected_keys = 0);

    void on_tap(metrics::TapPoint point, const tc::Packet& p, TimeNs local_time) override;
    void on_drop(int node, const tc::DropRecord& d) override;

    metrics::KeyLedger& ledger() { return ledger_; }
    const metrics::KeyLedger& ledger() const { return ledger_; }
    const std::vector<TimeNs>& series(metrics::TapPoint p) const;
    /// Drops reported by qdiscs and NICs, per node and reason.
    const std::map<std::pair<int, tc::DropReason>, std::uint64_t>& qdisc_drops() const { return drops_; }
    void set_trace(TraceSink sink) { trace_ = std::move(sink); }

private:
    metrics::KeyLedger ledger_;
    std::array<std::vector<TimeNs>, 6> series_;
    std::map<std::pair<int, tc::DropReason>, std::uint64_t> drops_;
    TraceSink trace_;
};

class PubSubApp {
public:
    PubSubApp(sim::Engine& engine, sim::Host& host, Role role, const AppConfig& cfg, sim::SchedLatencyModel wake,
              std::uint64_t seed, RunRecorder& recorder, uadp::Endpoint publish_to);

    void start();

    std::uint64_t published() const { return published_; }
    std::uint64_t delivered() const { return delivered_; }
    /// Reads that found no fresh frame.
    std::uint64_t missed_reads() const { return missed_reads_; }
    /// Fresh frames replaced by a newer one within the same read.
    std::uint64_t superseded() const { return superseded_; }
    std::uint64_t decode_errors() const { return decode_errors_; }

    // Thread bodies; public so unit tests can drive a single host.
    void on_subscriber(std::int64_t k);
    void on_user(std::int64_t k);
    void on_publisher(std::int64_t k);
    void on_socket(tc::Packet&& p, TimeNs available_at);

private:
    enum Thread { kSubscriber = 0, kUser = 1, kPublisher = 2 };
    void schedule_thread(Thread t, std::int64_t k);
    std::int64_t total_cycles() const;

    sim::Engine& engine_;
    sim::Host& host_;
    Role role_;
    AppConfig cfg_;
    sim::SchedLatencyModel wake_;
    std::array<sim::Rng, 3> rng_;
    RunRecorder& rec_;
    uadp::Endpoint publish_to_;

    struct Buffered {
        tc::Packet packet;
        TimeNs available_at;
    };
    std::deque<Buffered> socket_;
    std::int64_t last_key_ = 0;
    std::vector<std::int64_t> received_;   ///< written by the subscriber
    std::vector<std::int64_t> to_publish_; ///< written by the user thread
    std::vector<std::int64_t> values_;     ///< P's process variables

    std::uint64_t published_ = 0;
    std::uint64_t delivered_ = 0;
    std::uint64_t missed_reads_ = 0;
    std::uint64_t superseded_ = 0;
    std::uint64_t decode_errors_ = 0;
};

} // namespace tsnlab::app
