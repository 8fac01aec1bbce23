#include "tsnlab/harness/sweep.hpp"

#include <algorithm>

#include "tsnlab/metrics/csv.hpp"

namespace tsnlab::harness {

namespace {

using metrics::format_number;

std::string us_label(TimeNs ns) { return format_number(static_cast<double>(ns) / kNsPerUs); }

// Forces a host qdisc and lets txtime mode follow it.
ExperimentConfig with_host_qdisc(ExperimentConfig cfg, const std::string& q) {
    cfg.host_qdisc = q;
    cfg.txtime_mode.reset();
    return cfg;
}

} // namespace

const std::vector<std::string>& sweep_names() {
    static const std::vector<std::string> names = {"cycle",     "offset",      "delta",          "framesize", "idleslope",
                                                   "ws",        "p2p-compare", "bridge-compare", "be-traffic"};
    return names;
}

Sweep make_sweep(const std::string& name, const ExperimentConfig& base) {
    Sweep s;
    s.name = name;
    auto add = [&](std::string label, ExperimentConfig cfg, std::vector<std::string> params) {
        s.points.push_back({std::move(label), std::move(cfg), std::move(params)});
    };

    if (name == "cycle") {
        // Offset, delta and window keep their proportion of the 250 µs cycle.
        s.param_columns = {"cycle_us", "offset_us", "delta_us"};
        for (TimeNs c_us : {100, 125, 150, 200, 250}) {
            ExperimentConfig cfg = base;
            cfg.app.cycle = c_us * kNsPerUs;
            cfg.app.offset = cfg.app.cycle * 3 / 5;
            cfg.app.delta = cfg.app.cycle * 4 / 5;
            cfg.window = cfg.app.cycle / 4;
            add("c" + us_label(cfg.app.cycle), cfg,
                {us_label(cfg.app.cycle), us_label(cfg.app.offset), us_label(cfg.app.delta)});
        }
    } else if (name == "offset") {
        s.param_columns = {"offset_us"};
        for (TimeNs o_us : {0, 50, 100, 150, 200, 250}) {
            ExperimentConfig cfg = base;
            cfg.app.offset = o_us * kNsPerUs;
            add("o" + us_label(cfg.app.offset), cfg, {us_label(cfg.app.offset)});
        }
    } else if (name == "delta") {
        s.param_columns = {"delta_us"};
        for (TimeNs d_us = 125; d_us <= 250; d_us += 25) {
            ExperimentConfig cfg = base;
            cfg.app.delta = d_us * kNsPerUs;
            add("d" + us_label(cfg.app.delta), cfg, {us_label(cfg.app.delta)});
        }
    } else if (name == "framesize") {
        s.param_columns = {"n_vars", "uadp_bytes", "link_bytes", "physical_bytes"};
        for (int n : {3, 12, 30, 65, 136, 163}) {
            ExperimentConfig cfg = base;
            cfg.app.n_vars = n;
            const auto fs = uadp::frame_sizes(static_cast<std::size_t>(n));
            add("n" + std::to_string(n), cfg,
                {format_number(n), format_number(static_cast<std::uint64_t>(fs.uadp_bytes)),
                 format_number(static_cast<std::uint64_t>(fs.link_bytes)),
                 format_number(static_cast<std::uint64_t>(fs.physical_bytes))});
        }
    } else if (name == "idleslope") {
        s.param_columns = {"idleslope_pct"};
        const ExperimentConfig cbs = with_host_qdisc(base, "cbs");
        for (int pct = 80; pct <= 120; pct += 10) {
            ExperimentConfig cfg = cbs;
            cfg.idleslope_pct = pct;
            add("is" + std::to_string(pct), cfg, {format_number(pct)});
        }
    } else if (name == "ws") {
        s.param_columns = {"ws_us"};
        const ExperimentConfig taprio = with_host_qdisc(base, "taprio");
        for (TimeNs ws = 12'500; ws <= 75'000; ws += 12'500) {
            ExperimentConfig cfg = taprio;
            cfg.window = ws;
            add("ws" + us_label(ws), cfg, {us_label(ws)});
        }
    } else if (name == "p2p-compare") {
        s.param_columns = {"host_qdisc"};
        for (const char* q : {"fq", "mqprio", "cbs", "etf", "taprio"}) {
            ExperimentConfig cfg = with_host_qdisc(base, q);
            cfg.topology = "p2p";
            cfg.transit_host = false;
            add(q, cfg, {q});
        }
    } else if (name == "bridge-compare") {
        s.param_columns = {"host_qdisc", "bridge_qdisc"};
        static const std::pair<const char*, const char*> kCombos[] = {
            {"fq", "fq"},      {"mqprio", "mqprio"}, {"cbs", "cbs"},
            {"etf", "mqprio"}, {"etf", "cbs"},       {"taprio", "mqprio"},
        };
        for (const auto& [host, bridge] : kCombos) {
            ExperimentConfig cfg = with_host_qdisc(base, host);
            cfg.topology = "bridged";
            cfg.bridge_qdisc = bridge;
            add(std::string(host) + "-" + bridge, cfg, {host, bridge});
        }
    } else if (name == "be-traffic") {
        s.param_columns = {"be_rate_mbps"};
        for (int rate = 0; rate <= 1000; rate += 200) {
            ExperimentConfig cfg = base;
            cfg.be_rate_mbps = rate;
            add("be" + std::to_string(rate), cfg, {format_number(rate)});
        }
    } else {
        std::string known;
        for (const auto& n : sweep_names()) known += (known.empty() ? "" : ", ") + n;
        throw ConfigError("unknown sweep '" + name + "' (known: " + known + ")");
    }
    return s;
}

const std::vector<std::string>& sweep_result_columns() {
    static const std::vector<std::string> cols = {
        "runs",          "published",     "returned",  "d_P",          "d_L",
        "d_b_to_L",      "d_b_to_P",      "d_sigma",   "rtt_mean_us",  "rtt_median_us",
        "rtt_max_us",    "jitter_us",     "jitter_max_dev_us", "jitter_P_ingress_us", "missed_reads_P",
        "missed_reads_L", "late_launches", "l_B_us",
    };
    return cols;
}

std::vector<std::string> sweep_row(const SweepPoint& point, const std::vector<RunResult>& runs) {
    std::uint64_t published = 0, returned = 0, missed_p = 0, missed_l = 0, late = 0;
    metrics::DropCounts drops;
    std::vector<TimeNs> rtts;
    double jitter = 0, jitter_return = 0, max_dev = 0, lb_sum = 0;
    int lb_n = 0;
    for (const auto& r : runs) {
        const auto& s = r.summary;
        published += s.published;
        returned += s.returned;
        drops.p += s.drops.p;
        drops.l += s.drops.l;
        drops.b_to_l += s.drops.b_to_l;
        drops.b_to_p += s.drops.b_to_p;
        missed_p += s.missed_reads_p;
        missed_l += s.missed_reads_l;
        late += s.late_launches;
        rtts.insert(rtts.end(), r.rtts.begin(), r.rtts.end());
        jitter += s.jitter.mean_abs_dev_us;
        jitter_return += s.jitter_return.mean_abs_dev_us;
        max_dev = std::max(max_dev, s.jitter.max_dev_us);
        if (s.l_b_us) {
            lb_sum += *s.l_b_us;
            ++lb_n;
        }
    }
    const double n = runs.empty() ? 1.0 : static_cast<double>(runs.size());
    const auto rates = published > 0 ? metrics::compute_drop_rates(published, drops) : metrics::DropRates{};
    const auto rtt = metrics::compute_rtt_stats(std::move(rtts));

    std::vector<std::string> row = point.params;
    for (const auto& v : {
             format_number(static_cast<std::uint64_t>(runs.size())),
             format_number(published),
             format_number(returned),
             format_number(rates.d_p),
             format_number(rates.d_l),
             format_number(rates.d_b_to_l),
             format_number(rates.d_b_to_p),
             format_number(rates.d_sigma),
             format_number(rtt.mean_us),
             format_number(rtt.median_us),
             format_number(rtt.max_us),
             format_number(jitter / n),
             format_number(max_dev),
             format_number(jitter_return / n),
             format_number(missed_p),
             format_number(missed_l),
             format_number(late),
             lb_n > 0 ? format_number(lb_sum / lb_n) : std::string(),
         }) {
        row.push_back(v);
    }
    return row;
}

} // namespace tsnlab::harness
