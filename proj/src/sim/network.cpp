#include "tsnlab/sim/network.hpp"

#include <algorithm>
#include <stdexcept>

namespace tsnlab::sim {

// --- Port --------------------------------------------------------------------

Port::Port(Engine& engine, int node, HostClock& clock, Link link, tc::QdiscPtr qdisc, bool launch_capable)
    : engine_(engine), node_(node), clock_(clock), link_(link), qdisc_(std::move(qdisc)),
      launch_capable_(launch_capable) {
    if (!qdisc_) throw std::invalid_argument("port: qdisc is required");
}

void Port::connect(Port& peer) {
    peer_ = &peer;
    peer.peer_ = this;
}

void Port::send(tc::Packet p) {
    const TimeNs now = engine_.now();
    qdisc_->enqueue(std::move(p), clock_.sys(now));
    flush_drops(now);
    service();
}

void Port::report_drop(tc::DropRecord d) {
    if (on_drop) on_drop(d);
}

void Port::flush_drops(TimeNs) {
    for (auto& d : qdisc_->take_drops()) report_drop(std::move(d));
}

void Port::kick(TimeNs at) {
    const TimeNs now = engine_.now();
    at = std::max(at, now);
    if (pending_ && pending_at_ <= at) return;
    pending_ = true;
    pending_at_ = at;
    engine_.schedule(at, EventKind::Timer, node_, [this, at] {
        if (pending_ && pending_at_ == at) pending_ = false;
        service();
    });
}

void Port::service() {
    const TimeNs now = engine_.now();
    const TimeNs phc = clock_.phc(now);
    const TimeNs local = clock_.sys(now);

    auto launch_due = [&] { return !launch_.empty() && launch_.begin()->second.due <= now; };
    auto launch_head = [&] {
        auto node = launch_.extract(launch_.begin());
        if (now > node.mapped().due) ++late_launches_;
        start_tx(std::move(node.mapped().packet), now);
    };

    if (now >= busy_until_ && launch_due()) launch_head();

    while (true) {
        const bool idle = now >= busy_until_;
        auto p = qdisc_->dequeue(local, idle);
        flush_drops(now);
        if (!p) break;
        if (p->launch && !launch_capable_) {
            // No launch-time support: the frame waits in the hardware queue for the link.
            p->launch = false;
            launch_.emplace(std::make_pair(phc, launch_seq_++), Launch{now, std::move(*p)});
            continue;
        }
        if (p->launch) {
            const TimeNs txtime = p->txtime.value_or(phc);
            if (txtime < phc) {
                report_drop({std::move(*p), tc::DropReason::NicLate, now});
                continue;
            }
            const TimeNs due = clock_.true_from_phc(txtime, now);
            launch_.emplace(std::make_pair(txtime, launch_seq_++), Launch{due, std::move(*p)});
            continue;
        }
        if (!idle) throw std::logic_error("port: qdisc released a frame onto a busy link");
        start_tx(std::move(*p), now);
    }

    if (now >= busy_until_ && launch_due()) launch_head();

    if (!launch_.empty() && now >= busy_until_) kick(launch_.begin()->second.due);
    if (auto w = qdisc_->next_wakeup(local)) kick(clock_.true_from_sys(*w, now));
}

void Port::start_tx(tc::Packet p, TimeNs now) {
    if (now < busy_until_) ++overlaps_;
    const TimeNs tx = link_.serialization(p.physical_bytes);
    busy_until_ = now + tx;
    ++frames_sent_;
    const TimeNs phc = clock_.phc(now);
    if (on_tx_start) on_tx_start(p, phc);

    engine_.schedule(busy_until_, EventKind::TxComplete, node_, [this] { service(); });
    if (peer_) {
        Port* peer = peer_;
        engine_.schedule(busy_until_ + link_.propagation, EventKind::FrameArrival, peer->node_,
                         [peer, p = std::move(p)]() mutable {
                             if (peer->on_receive) peer->on_receive(std::move(p));
                         });
    }
}

// --- Host --------------------------------------------------------------------

namespace {

std::uint64_t clock_stream(int id) {
    switch (id) {
    case kNodeP: return kStreamClockP;
    case kNodeL: return kStreamClockL;
    case kNodeX: return kStreamClockX;
    default: return kStreamClockBridge;
    }
}

std::uint64_t rx_stream(int id) {
    switch (id) {
    case kNodeP: return kStreamRxP;
    case kNodeL: return kStreamRxL;
    default: return kStreamRxX;
    }
}

} // namespace

Host::Host(Engine& engine, int id, std::string name, uadp::MacAddress mac, ClockParams clock, bool grandmaster,
           std::uint64_t seed, Link link, tc::QdiscPtr qdisc, SchedLatencyModel rx, SimObserver* observer,
           std::optional<HostTaps> taps, bool launch_capable)
    : engine_(engine), id_(id), name_(std::move(name)), mac_(mac),
      clock_(clock, grandmaster, stream_seed(seed, clock_stream(id))),
      port_(engine, id, clock_, link, std::move(qdisc), launch_capable), rx_(rx),
      rx_rng_(stream_seed(seed, rx_stream(id))), observer_(observer), taps_(taps) {
    rx_.validate();
    port_.on_receive = [this](tc::Packet&& p) { receive(std::move(p)); };
    port_.on_tx_start = [this](const tc::Packet& p, TimeNs phc) {
        if (observer_ && taps_ && p.is_opc) observer_->on_tap(taps_->egress, p, phc);
    };
    port_.on_drop = [this](const tc::DropRecord& d) {
        if (observer_) observer_->on_drop(id_, d);
    };
}

bool Host::accepts(const uadp::MacAddress& dst) const {
    return dst == mac_ || std::find(groups_.begin(), groups_.end(), dst) != groups_.end();
}

void Host::receive(tc::Packet&& p) {
    const TimeNs now = engine_.now();
    if (!p.is_opc) {
        if (p.dst == mac_) ++be_received_;
        return;
    }
    p.rx_tap = clock_.phc(now);
    if (observer_ && taps_) observer_->on_tap(taps_->ingress, p, p.rx_tap);
    if (!accepts(p.dst)) return;
    const TimeNs avail = now + sample_wake_delay(rx_, rx_rng_);
    engine_.schedule(avail, EventKind::Timer, id_, [this, avail, p = std::move(p)]() mutable {
        if (on_socket) on_socket(std::move(p), avail);
    });
}

// --- Bridge ------------------------------------------------------------------

Bridge::Bridge(Engine& engine, std::uint64_t seed, Link link, std::array<tc::QdiscPtr, kPorts> qdiscs,
               BridgeLatency latency, SimObserver* observer)
    : engine_(engine), clock_(ClockParams{}, true, stream_seed(seed, kStreamClockBridge)), latency_(latency),
      rng_(stream_seed(seed, kStreamBridge)), observer_(observer) {
    for (int i = 0; i < kPorts; ++i) {
        ports_[i] = std::make_unique<Port>(engine, kNodeBridge, clock_, link, std::move(qdiscs[i]), false);
        ports_[i]->on_receive = [this, i](tc::Packet&& p) { receive(i, std::move(p)); };
        ports_[i]->on_drop = [this](const tc::DropRecord& d) {
            if (observer_) observer_->on_drop(kNodeBridge, d);
        };
    }
}

void Bridge::receive(int in_port, tc::Packet&& p) {
    const TimeNs now = engine_.now();
    if (observer_ && p.is_opc && in_port != kToX) {
        observer_->on_tap(in_port == kToP ? metrics::TapPoint::BIngressFromP : metrics::TapPoint::BIngressFromL, p,
                          clock_.phc(now));
    }
    const TimeNs at = now + latency_.sample(rng_);
    engine_.schedule(at, EventKind::Timer, kNodeBridge, [this, in_port, p = std::move(p)]() mutable {
        auto it = fdb_.find(p.dst);
        if (it != fdb_.end()) {
            if (it->second != in_port) ports_[it->second]->send(std::move(p));
            return;
        }
        ++flooded_;
        for (int i = 0; i < kPorts; ++i) {
            if (i != in_port) ports_[i]->send(p);
        }
    });
}

// --- BeSource ----------------------------------------------------------------

BeSource::BeSource(Engine& engine, Port& port, BeTrafficSpec spec, uadp::MacAddress dst, int origin, TimeNs start,
                   TimeNs stop)
    : engine_(engine), port_(port), spec_(spec), dst_(dst), origin_(origin), start_(start), stop_(stop) {}

void BeSource::start() {
    if (!(spec_.rate_mbps > 0) || start_ >= stop_) return;
    engine_.schedule(std::max(start_, engine_.now()), EventKind::Timer, origin_, [this] { emit(); });
}

void BeSource::emit() {
    tc::Packet p;
    p.id = emitted_;
    p.physical_bytes = spec_.physical_bytes;
    p.pcp = spec_.pcp;
    p.flow = 0x10000u + static_cast<std::uint32_t>(origin_);
    p.dst = dst_;
    p.origin = origin_;
    ++emitted_;
    port_.send(std::move(p));
    const TimeNs next = start_ + spec_.emission_offset(emitted_);
    if (next < stop_) engine_.schedule(next, EventKind::Timer, origin_, [this] { emit(); });
}

// --- Topology ----------------------------------------------------------------

Topology::Topology(Engine& engine, const TopologySpec& spec, const QdiscFactory& qdiscs, SimObserver* observer) {
    using metrics::TapPoint;
    const bool p_is_gm = !spec.bridged;
    p_ = std::make_unique<Host>(engine, kNodeP, "P", addr::kHostP, spec.clock, p_is_gm, spec.seed, spec.link,
                                qdiscs(PortRole::HostP), spec.rx, observer,
                                HostTaps{TapPoint::PEgress, TapPoint::PIngress}, spec.launch_time_capable);
    l_ = std::make_unique<Host>(engine, kNodeL, "L", addr::kHostL, spec.clock, false, spec.seed, spec.link,
                                qdiscs(PortRole::HostL), spec.rx, observer,
                                HostTaps{TapPoint::LEgress, TapPoint::LIngress}, spec.launch_time_capable);
    p_->join_group(addr::kGroupToP);
    l_->join_group(addr::kGroupToL);

    if (!spec.bridged) {
        if (spec.transit_host) throw std::invalid_argument("topology: a transit host needs the bridged topology");
        p_->port().connect(l_->port());
        return;
    }

    bridge_ = std::make_unique<Bridge>(
        engine, spec.seed, spec.link,
        std::array<tc::QdiscPtr, Bridge::kPorts>{qdiscs(PortRole::BridgeToP), qdiscs(PortRole::BridgeToL),
                                                 qdiscs(PortRole::BridgeToX)},
        spec.bridge_latency, observer);
    p_->port().connect(bridge_->port(Bridge::kToP));
    l_->port().connect(bridge_->port(Bridge::kToL));
    bridge_->add_fdb(addr::kHostP, Bridge::kToP);
    bridge_->add_fdb(addr::kGroupToP, Bridge::kToP);
    bridge_->add_fdb(addr::kHostL, Bridge::kToL);
    bridge_->add_fdb(addr::kGroupToL, Bridge::kToL);

    if (spec.transit_host) {
        x_ = std::make_unique<Host>(engine, kNodeX, "X", addr::kHostX, spec.clock, false, spec.seed, spec.link,
                                    qdiscs(PortRole::HostX), spec.rx, observer, std::nullopt,
                                    spec.launch_time_capable);
        x_->port().connect(bridge_->port(Bridge::kToX));
        bridge_->add_fdb(addr::kHostX, Bridge::kToX);
    }
}

} // namespace tsnlab::sim
