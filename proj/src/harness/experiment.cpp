#include "tsnlab/harness/experiment.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "tsnlab/harness/schedule.hpp"
#include "tsnlab/tc/cbs.hpp"
#include "tsnlab/tc/etf.hpp"
#include "tsnlab/tc/fq_codel.hpp"
#include "tsnlab/tc/prio.hpp"
#include "tsnlab/tc/taprio.hpp"

namespace tsnlab::harness {

namespace {

using metrics::TapPoint;
using sim::PortRole;

// Largest BE frame on the wire: 1522 link bytes plus preamble, SFD and IFG.
constexpr double kMaxInterferenceBits = 1542.0 * 8;
// Lead time of the taprio txtime-assist mode over the ETF delta.
constexpr TimeNs kTxtimeDelayMargin = 10 * kNsPerUs;

const uadp::Endpoint kToL{sim::addr::kGroupToL, 10, 3};
const uadp::Endpoint kToP{sim::addr::kGroupToP, 10, 3};

tc::QdiscPtr make_cbs_root(const ExperimentConfig& cfg) {
    const double frame_bits = static_cast<double>(uadp::frame_sizes(cfg.app.n_vars).physical_bytes) * 8;
    const double flow_bps = frame_bits * 1e9 / static_cast<double>(cfg.app.cycle);
    const auto params = tc::cbs_params_from_reservation(1e9, flow_bps * cfg.idleslope_pct / 100.0, frame_bits,
                                                        kMaxInterferenceBits, !cfg.cbs_standard);
    std::array<tc::QdiscPtr, tc::kHardwareQueues> children;
    children[0] = std::make_unique<tc::CbsShaper>(params);
    return std::make_unique<tc::PrioQdisc>(tc::PriorityMap::experiment(), std::move(children));
}

tc::EtfParams etf_params(const ExperimentConfig& cfg, bool skip_sock_check) {
    tc::EtfParams p;
    p.delta = cfg.app.delta;
    p.offload = cfg.launch_time;
    p.skip_sock_check = skip_sock_check;
    return p;
}

tc::QdiscPtr make_host_qdisc(const ExperimentConfig& cfg) {
    const auto& q = cfg.host_qdisc;
    if (q == "fq") return std::make_unique<tc::FqCodelQdisc>();
    if (q == "mqprio") return std::make_unique<tc::PrioQdisc>(tc::PriorityMap::experiment());
    if (q == "cbs") return make_cbs_root(cfg);
    if (q == "etf") {
        std::array<tc::QdiscPtr, tc::kHardwareQueues> children;
        children[0] = std::make_unique<tc::EtfQueue>(etf_params(cfg, false));
        return std::make_unique<tc::PrioQdisc>(tc::PriorityMap::experiment(), std::move(children));
    }
    if (q == "taprio") {
        auto sched = build_taprio_schedule(cfg.app.cycle, cfg.app.offset, cfg.window, cfg.guard, cfg.app.base_time);
        sched.txtime_assist = true;
        sched.etf_assist = true;
        sched.txtime_delay = cfg.app.delta + kTxtimeDelayMargin;
        sched.validate(cfg.app.delta);
        std::vector<tc::TaprioClass> classes;
        classes.push_back({std::make_unique<tc::EtfQueue>(etf_params(cfg, true)), true});
        classes.push_back({std::make_unique<tc::FifoQueue>(), false});
        return std::make_unique<tc::TaprioQdisc>(tc::PriorityMap::experiment(), std::move(sched), std::move(classes));
    }
    throw ConfigError("config: unknown host qdisc '" + q + "'");
}

tc::QdiscPtr make_bridge_qdisc(const ExperimentConfig& cfg) {
    const auto& q = cfg.bridge_qdisc;
    if (q == "fq") return std::make_unique<tc::FqCodelQdisc>();
    if (q == "mqprio") return std::make_unique<tc::PrioQdisc>(tc::PriorityMap::experiment());
    if (q == "cbs") return make_cbs_root(cfg);
    throw ConfigError("config: unknown bridge qdisc '" + q + "'");
}

metrics::JitterStats jitter_or_empty(const std::vector<TimeNs>& arrivals, TimeNs cycle) {
    if (arrivals.size() < 2) return {};
    return metrics::compute_jitter(arrivals, cycle);
}

} // namespace

tc::QdiscPtr make_qdisc(const ExperimentConfig& cfg, PortRole role) {
    switch (role) {
    case PortRole::HostP:
    case PortRole::HostL: return make_host_qdisc(cfg);
    case PortRole::BridgeToP:
    case PortRole::BridgeToL: return make_bridge_qdisc(cfg);
    case PortRole::HostX:
    case PortRole::BridgeToX: return std::make_unique<tc::FqCodelQdisc>();
    }
    throw std::logic_error("unknown port role");
}

RunResult run_once(const ExperimentConfig& cfg, int repetition, bool trace) {
    const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(repetition);
    const auto profile = sim::noise_preset(cfg.noise);
    app::AppConfig app_cfg = cfg.app;
    app_cfg.txtime_mode = cfg.txtime();

    sim::TopologySpec spec;
    spec.bridged = cfg.bridged();
    spec.transit_host = cfg.transit_host;
    spec.clock = profile.clock;
    spec.rx = profile.rx;
    spec.bridge_latency = {cfg.bridge_latency, cfg.bridge_spread};
    spec.launch_time_capable = cfg.launch_time;
    spec.seed = seed;

    RunResult out;
    app::RunRecorder rec(app_cfg.packets);
    if (trace) {
        const std::string run_id = cfg.hash() + "/" + std::to_string(repetition);
        rec.set_trace([&out, run_id](TapPoint point, std::int64_t key, TimeNs t) {
            out.trace.push_back({run_id, out.trace.size(), point, key, t});
        });
    }

    sim::Engine engine;
    sim::Topology topo(engine, spec, [&cfg](PortRole r) { return make_qdisc(cfg, r); }, &rec);
    app::PubSubApp pub(engine, topo.p(), app::Role::Publisher, app_cfg, profile.wake, seed, rec, kToL);
    app::PubSubApp loop(engine, topo.l(), app::Role::Loopback, app_cfg, profile.wake, seed, rec, kToP);

    std::unique_ptr<sim::BeSource> be;
    if (cfg.be_rate_mbps > 0) {
        sim::BeTrafficSpec be_spec{cfg.be_rate_mbps, cfg.be_frame_bytes, 0};
        const TimeNs stop = app_cfg.base_time + static_cast<TimeNs>(app_cfg.packets) * app_cfg.cycle;
        sim::Port& port = cfg.transit_host ? topo.x()->port() : topo.p().port();
        const int origin = cfg.transit_host ? sim::kNodeX : sim::kNodeP;
        be = std::make_unique<sim::BeSource>(engine, port, be_spec, sim::addr::kHostL, origin, app_cfg.base_time, stop);
        be->start();
    }

    pub.start();
    loop.start();
    engine.run_until(app_cfg.end_time());

    const auto& ledger = rec.ledger();
    metrics::Summary& s = out.summary;
    s.config_hash = cfg.hash();
    s.seed = seed;
    s.repetition = repetition;
    s.topology = cfg.topology;
    s.host_qdisc = cfg.host_qdisc;
    s.bridge_qdisc = cfg.bridged() ? cfg.bridge_qdisc : "";
    s.comparable_key = cfg.comparable_key() + "seed_used=" + std::to_string(seed) + "\n";
    s.published = ledger.published();
    s.returned = ledger.returned();
    s.drops = ledger.drop_counts();
    if (s.published > 0) s.rates = metrics::compute_drop_rates(s.published, s.drops);
    s.rtt = metrics::compute_rtt_stats(ledger.rtts());
    out.l_ingress = rec.series(TapPoint::LIngress);
    out.p_ingress = rec.series(TapPoint::PIngress);
    s.jitter = jitter_or_empty(out.l_ingress, app_cfg.cycle);
    s.jitter_return = jitter_or_empty(out.p_ingress, app_cfg.cycle);
    s.missed_reads_p = pub.missed_reads();
    s.missed_reads_l = loop.missed_reads();
    s.late_launches = topo.p().port().late_launches() + topo.l().port().late_launches();

    out.rtts = ledger.rtts();
    out.p_delivered = ledger.returned_times();
    static const char* kNodeNames[] = {"P", "L", "B", "X"};
    for (const auto& [k, n] : rec.qdisc_drops()) {
        out.qdisc_drops[std::string(kNodeNames[k.first]) + ":" + std::string(tc::drop_reason_name(k.second))] += n;
    }
    out.events = engine.executed();
    out.digest = engine.digest();
    if (be) {
        out.be_emitted = be->emitted();
        out.be_received = topo.l().be_received();
    }
    return out;
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& job) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) job(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    job(i);
                } catch (...) {
                    std::lock_guard lock(error_mu);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

std::vector<std::vector<RunResult>> run_batch(const std::vector<ExperimentConfig>& cfgs, unsigned threads,
                                              bool trace) {
    for (const auto& c : cfgs) c.validate();

    struct Job {
        std::size_t point;
        int repetition;
        bool baseline;
    };
    std::vector<Job> jobs;
    std::vector<std::vector<RunResult>> results(cfgs.size());
    std::vector<std::vector<RunResult>> baselines(cfgs.size());
    std::vector<ExperimentConfig> p2p(cfgs.size());
    for (std::size_t i = 0; i < cfgs.size(); ++i) {
        const auto reps = static_cast<std::size_t>(cfgs[i].repetitions);
        results[i].resize(reps);
        for (int r = 0; r < cfgs[i].repetitions; ++r) jobs.push_back({i, r, false});
        if (cfgs[i].bridged()) {
            p2p[i] = cfgs[i];
            p2p[i].topology = "p2p";
            p2p[i].transit_host = false;
            baselines[i].resize(reps);
            for (int r = 0; r < cfgs[i].repetitions; ++r) jobs.push_back({i, r, true});
        }
    }

    parallel_for(jobs.size(), threads, [&](std::size_t j) {
        const Job& job = jobs[j];
        if (job.baseline) {
            baselines[job.point][job.repetition] = run_once(p2p[job.point], job.repetition, false);
        } else {
            results[job.point][job.repetition] = run_once(cfgs[job.point], job.repetition, trace);
        }
    });

    for (std::size_t i = 0; i < cfgs.size(); ++i) {
        for (std::size_t r = 0; r < baselines[i].size(); ++r) {
            auto& s = results[i][r].summary;
            const auto& b = baselines[i][r].summary;
            if (s.rtt.count > 0 && b.rtt.count > 0) s.l_b_us = metrics::estimate_bridge_latency(s, b);
        }
    }
    return results;
}

std::vector<RunResult> run_experiment(const ExperimentConfig& cfg, bool trace) {
    return std::move(run_batch({cfg}, cfg.threads, trace).front());
}

} // namespace tsnlab::harness
