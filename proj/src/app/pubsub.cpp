#include "tsnlab/app/pubsub.hpp"

#include <algorithm>
#include <stdexcept>

namespace tsnlab::app {

using metrics::Stage;
using metrics::TapPoint;

std::vector<std::string> AppConfig::validate() const {
    if (cycle <= 0) throw std::invalid_argument("app: cycle must be positive");
    // o == c is allowed: it is the same phase as o == 0 shifted by one cycle.
    if (offset < 0 || offset > cycle) throw std::invalid_argument("app: offset must lie in [0, cycle]");
    if (delta <= 0) throw std::invalid_argument("app: delta must be positive");
    if (n_vars < 1) throw std::invalid_argument("app: at least one variable is required");
    uadp::frame_sizes(static_cast<std::size_t>(n_vars)); // throws when oversize
    if (packets == 0) throw std::invalid_argument("app: packets must be positive");
    if (drain_cycles < 1) throw std::invalid_argument("app: drain_cycles must be positive");
    if (base_time < 0) throw std::invalid_argument("app: base_time must be non-negative");

    std::vector<std::string> warnings;
    const TimeNs publish_latency = cycle * 4 / 10 + offset;
    if (txtime_mode && delta >= publish_latency) {
        warnings.push_back("delta " + std::to_string(delta) + " ns is not below the publishing latency 0.4c+o = " +
                           std::to_string(publish_latency) + " ns");
    }
    return warnings;
}

TimeNs AppConfig::end_time() const {
    return base_time + (static_cast<TimeNs>(packets) + drain_cycles + 1) * cycle;
}

// --- RunRecorder -------------------------------------------------------------

RunRecorder::RunRecorder(std::size_t expected_keys) {
    ledger_.reserve(expected_keys);
    for (auto& s : series_) s.reserve(expected_keys);
}

void RunRecorder::on_tap(TapPoint point, const tc::Packet& p, TimeNs local_time) {
    ledger_.on_tap(point, p.key, local_time);
    series_[static_cast<std::size_t>(point)].push_back(local_time);
    if (trace_) trace_(point, p.key, local_time);
}

void RunRecorder::on_drop(int node, const tc::DropRecord& d) { ++drops_[{node, d.reason}]; }

const std::vector<TimeNs>& RunRecorder::series(TapPoint p) const { return series_[static_cast<std::size_t>(p)]; }

// --- PubSubApp ---------------------------------------------------------------

PubSubApp::PubSubApp(sim::Engine& engine, sim::Host& host, Role role, const AppConfig& cfg,
                     sim::SchedLatencyModel wake, std::uint64_t seed, RunRecorder& recorder,
                     uadp::Endpoint publish_to)
    : engine_(engine), host_(host), role_(role), cfg_(cfg), wake_(wake),
      rng_{sim::Rng(sim::stream_seed(seed, sim::kStreamWakeBase + 10 * host.id() + kSubscriber)),
           sim::Rng(sim::stream_seed(seed, sim::kStreamWakeBase + 10 * host.id() + kUser)),
           sim::Rng(sim::stream_seed(seed, sim::kStreamWakeBase + 10 * host.id() + kPublisher))},
      rec_(recorder), publish_to_(std::move(publish_to)) {
    cfg_.validate();
    wake_.validate();
    values_.assign(static_cast<std::size_t>(cfg_.n_vars), 0);
    host_.on_socket = [this](tc::Packet&& p, TimeNs avail) { on_socket(std::move(p), avail); };
}

std::int64_t PubSubApp::total_cycles() const { return static_cast<std::int64_t>(cfg_.packets) + cfg_.drain_cycles; }

void PubSubApp::start() {
    schedule_thread(kSubscriber, 0);
    schedule_thread(kUser, 0);
    schedule_thread(kPublisher, 0);
}

void PubSubApp::schedule_thread(Thread t, std::int64_t k) {
    if (k >= total_cycles()) return;
    static constexpr std::array<int, 3> kPhaseTenths = {0, 3, 6};
    const TimeNs now = engine_.now();
    const TimeNs target_local = cfg_.base_time + k * cfg_.cycle + cfg_.cycle * kPhaseTenths[t] / 10;
    const TimeNs delay = sim::sample_wake_delay(wake_, rng_[t]);
    const TimeNs at = std::max(now, host_.clock().true_from_sys(target_local, now) + delay);
    engine_.schedule(at, sim::EventKind::ThreadWake, host_.id(), [this, t, k] {
        switch (t) {
        case kSubscriber: on_subscriber(k); break;
        case kUser: on_user(k); break;
        case kPublisher: on_publisher(k); break;
        }
        schedule_thread(t, k + 1);
    });
}

void PubSubApp::on_socket(tc::Packet&& p, TimeNs available_at) { socket_.push_back({std::move(p), available_at}); }

void PubSubApp::on_subscriber(std::int64_t) {
    const TimeNs now = engine_.now();
    std::optional<std::int64_t> best_key;
    std::vector<std::int64_t> best_values;
    TimeNs best_tap = 0;
    std::uint64_t fresh = 0;

    while (!socket_.empty() && socket_.front().available_at < now) {
        Buffered b = std::move(socket_.front());
        socket_.pop_front();
        if (!b.packet.frame) continue;
        uadp::NetworkMessage msg;
        try {
            msg = uadp::decode_network_message(b.packet.frame->payload);
        } catch (const uadp::CodecError&) {
            ++decode_errors_;
            continue;
        }
        if (msg.payload.empty()) continue;
        const std::int64_t key = msg.payload.front().value;
        if (key <= last_key_) continue; // stale copy
        ++fresh;
        if (!best_key || key > *best_key) {
            best_key = key;
            best_tap = b.packet.rx_tap;
            best_values.clear();
            for (const auto& f : msg.payload) best_values.push_back(f.value);
        }
    }

    if (!best_key) {
        ++missed_reads_;
        return;
    }
    superseded_ += fresh - 1;
    last_key_ = *best_key;
    received_ = std::move(best_values);
    ++delivered_;
    if (role_ == Role::Publisher) {
        rec_.ledger().on_returned(*best_key, best_tap);
    } else {
        rec_.ledger().reach(*best_key, Stage::LDelivered);
    }
}

void PubSubApp::on_user(std::int64_t k) {
    if (role_ == Role::Publisher) {
        if (k < static_cast<std::int64_t>(cfg_.packets)) {
            for (auto& v : values_) ++v;
        }
    } else if (!received_.empty()) {
        to_publish_ = received_;
    }
}

void PubSubApp::on_publisher(std::int64_t k) {
    std::vector<std::int64_t> values;
    if (role_ == Role::Publisher) {
        if (k >= static_cast<std::int64_t>(cfg_.packets) || values_.front() <= 0) return;
        values = values_;
        rec_.ledger().reach(values.front(), Stage::Published);
    } else {
        if (to_publish_.empty()) return;
        values = to_publish_;
        rec_.ledger().reach(values.front(), Stage::LPublished);
    }

    const TimeNs now = engine_.now();
    tc::Packet p;
    p.id = published_;
    p.key = values.front();
    p.is_opc = true;
    p.origin = host_.id();
    p.flow = 1 + static_cast<std::uint32_t>(host_.id());
    p.dst = publish_to_.mac;
    p.pcp = publish_to_.effective_pcp();
    if (cfg_.txtime_mode) {
        p.txtime = cfg_.base_time + (k + 1) * cfg_.cycle + cfg_.offset;
        p.sock_txtime = true;
    }
    try {
        const auto msg = uadp::make_experiment_message(static_cast<std::uint64_t>(host_.id()) + 1, 1,
                                                       static_cast<std::uint16_t>(published_), host_.clock().sys(now),
                                                       values);
        auto frame = std::make_shared<uadp::Frame>(uadp::build_frame(msg, publish_to_, host_.mac()));
        p.physical_bytes = frame->physical_bytes();
        p.frame = std::move(frame);
    } catch (const uadp::CodecError&) {
        rec_.on_drop(host_.id(), {std::move(p), tc::DropReason::Oversize, now});
        return;
    }
    ++published_;
    host_.transmit(std::move(p));
}

} // namespace tsnlab::app
