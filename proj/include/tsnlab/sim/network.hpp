#pragma once

// Ports, end hosts, the store-and-forward bridge and the two testbed topologies.

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <string>

#include "tsnlab/metrics/metrics.hpp"
#include "tsnlab/sim/clock.hpp"
#include "tsnlab/sim/engine.hpp"
#include "tsnlab/sim/models.hpp"
#include "tsnlab/tc/qdisc.hpp"

namespace tsnlab::sim {

namespace addr {
inline constexpr uadp::MacAddress kHostP{{0x02, 0x00, 0x00, 0x00, 0x00, 0x01}};
inline constexpr uadp::MacAddress kHostL{{0x02, 0x00, 0x00, 0x00, 0x00, 0x02}};
inline constexpr uadp::MacAddress kHostX{{0x02, 0x00, 0x00, 0x00, 0x00, 0x03}};
/// PubSub groups: P publishes toward L on the first, L mirrors back on the second.
inline constexpr uadp::MacAddress kGroupToL{{0x01, 0x00, 0x5e, 0x00, 0x00, 0x01}};
inline constexpr uadp::MacAddress kGroupToP{{0x01, 0x00, 0x5e, 0x00, 0x00, 0x02}};
} // namespace addr

enum NodeId : int { kNodeP = 0, kNodeL = 1, kNodeBridge = 2, kNodeX = 3 };

class SimObserver {
public:
    virtual ~SimObserver() = default;
    virtual void on_tap(metrics::TapPoint point, const tc::Packet& p, TimeNs local_time) = 0;
    virtual void on_drop(int node, const tc::DropRecord& d) = 0;
};

/// One end of a full-duplex link: egress qdisc, NIC launch stage and serializer.
class Port {
public:
    Port(Engine& engine, int node, HostClock& clock, Link link, tc::QdiscPtr qdisc, bool launch_capable = true);

    void connect(Port& peer);
    /// Hands a frame to the egress qdisc at the current time.
    void send(tc::Packet p);

    std::function<void(tc::Packet&&)> on_receive;
    std::function<void(const tc::Packet&, TimeNs phc)> on_tx_start;
    std::function<void(const tc::DropRecord&)> on_drop;

    tc::Qdisc& qdisc() { return *qdisc_; }
    const Link& link() const { return link_; }
    std::uint64_t frames_sent() const { return frames_sent_; }
    /// Launch-stage frames that started after their launch time because the link was busy.
    std::uint64_t late_launches() const { return late_launches_; }
    /// Frames whose transmissions overlapped on this port; always zero.
    std::uint64_t overlaps() const { return overlaps_; }

private:
    void service();
    void kick(TimeNs at);
    void start_tx(tc::Packet p, TimeNs now);
    void flush_drops(TimeNs now);
    void report_drop(tc::DropRecord d);

    Engine& engine_;
    int node_;
    HostClock& clock_;
    Link link_;
    tc::QdiscPtr qdisc_;
    bool launch_capable_;
    Port* peer_ = nullptr;

    TimeNs busy_until_ = 0;
    bool pending_ = false;
    TimeNs pending_at_ = 0;
    std::uint64_t launch_seq_ = 0;
    struct Launch {
        TimeNs due; ///< true time at which the PHC reaches the launch time
        tc::Packet packet;
    };
    std::map<std::pair<TimeNs, std::uint64_t>, Launch> launch_;
    std::uint64_t frames_sent_ = 0;
    std::uint64_t late_launches_ = 0;
    std::uint64_t overlaps_ = 0;
};

struct HostTaps {
    metrics::TapPoint egress;
    metrics::TapPoint ingress;
};

class Host {
public:
    Host(Engine& engine, int id, std::string name, uadp::MacAddress mac, ClockParams clock, bool grandmaster,
         std::uint64_t seed, Link link, tc::QdiscPtr qdisc, SchedLatencyModel rx, SimObserver* observer,
         std::optional<HostTaps> taps, bool launch_capable = true);

    int id() const { return id_; }
    const std::string& name() const { return name_; }
    const uadp::MacAddress& mac() const { return mac_; }
    HostClock& clock() { return clock_; }
    Port& port() { return port_; }

    void join_group(const uadp::MacAddress& group) { groups_.push_back(group); }
    /// Frames accepted by this host, with the time the socket can read them.
    std::function<void(tc::Packet&&, TimeNs available_at)> on_socket;

    void transmit(tc::Packet p) { port_.send(std::move(p)); }
    std::uint64_t be_received() const { return be_received_; }

private:
    void receive(tc::Packet&& p);
    bool accepts(const uadp::MacAddress& dst) const;

    Engine& engine_;
    int id_;
    std::string name_;
    uadp::MacAddress mac_;
    HostClock clock_;
    Port port_;
    SchedLatencyModel rx_;
    Rng rx_rng_;
    SimObserver* observer_;
    std::optional<HostTaps> taps_;
    std::vector<uadp::MacAddress> groups_;
    std::uint64_t be_received_ = 0;
};

/// Store-and-forward bridge with a static forwarding table. The bridge is the
/// time reference and taps only its ingress direction.
class Bridge {
public:
    static constexpr int kPorts = 3;
    enum PortIndex { kToP = 0, kToL = 1, kToX = 2 };

    Bridge(Engine& engine, std::uint64_t seed, Link link, std::array<tc::QdiscPtr, kPorts> qdiscs,
           BridgeLatency latency, SimObserver* observer);

    Port& port(int i) { return *ports_.at(i); }
    HostClock& clock() { return clock_; }
    void add_fdb(const uadp::MacAddress& mac, int port) { fdb_[mac] = port; }
    std::uint64_t flooded() const { return flooded_; }

private:
    void receive(int in_port, tc::Packet&& p);

    Engine& engine_;
    HostClock clock_;
    std::array<std::unique_ptr<Port>, kPorts> ports_;
    BridgeLatency latency_;
    Rng rng_;
    SimObserver* observer_;
    std::map<uadp::MacAddress, int> fdb_;
    std::uint64_t flooded_ = 0;
};

/// Open-loop constant-rate cross traffic.
class BeSource {
public:
    BeSource(Engine& engine, Port& port, BeTrafficSpec spec, uadp::MacAddress dst, int origin, TimeNs start,
             TimeNs stop);
    void start();
    std::uint64_t emitted() const { return emitted_; }

private:
    void emit();

    Engine& engine_;
    Port& port_;
    BeTrafficSpec spec_;
    uadp::MacAddress dst_;
    int origin_;
    TimeNs start_, stop_;
    std::uint64_t emitted_ = 0;
};

enum class PortRole { HostP, HostL, HostX, BridgeToP, BridgeToL, BridgeToX };
using QdiscFactory = std::function<tc::QdiscPtr(PortRole)>;

struct TopologySpec {
    bool bridged = false;
    /// Adds host X on a third bridge port as a cross-traffic source.
    bool transit_host = false;
    Link link;
    ClockParams clock;
    SchedLatencyModel rx = SchedLatencyModel::constant(0);
    BridgeLatency bridge_latency;
    bool launch_time_capable = true;
    std::uint64_t seed = 0;
};

/// P2P: P <-> L, P is grandmaster. Bridged: P <-> B <-> L (and X <-> B), B is grandmaster.
class Topology {
public:
    Topology(Engine& engine, const TopologySpec& spec, const QdiscFactory& qdiscs, SimObserver* observer);

    Host& p() { return *p_; }
    Host& l() { return *l_; }
    Host* x() { return x_.get(); }
    Bridge* bridge() { return bridge_.get(); }

private:
    std::unique_ptr<Host> p_, l_, x_;
    std::unique_ptr<Bridge> bridge_;
};

/// Stream identifiers for stream_seed().
enum RngStream : std::uint64_t {
    kStreamClockP = 1,
    kStreamClockL,
    kStreamClockX,
    kStreamClockBridge,
    kStreamRxP,
    kStreamRxL,
    kStreamRxX,
    kStreamBridge,
    kStreamWakeBase = 100, ///< + 10 * node + thread
};

} // namespace tsnlab::sim
