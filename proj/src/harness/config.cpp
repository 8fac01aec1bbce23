#include "tsnlab/harness/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

#include "tsnlab/harness/schedule.hpp"
#include "tsnlab/metrics/csv.hpp"
#include "tsnlab/sim/models.hpp"

namespace tsnlab::harness {

namespace {

const std::vector<std::string> kHostQdiscs = {"fq", "mqprio", "cbs", "etf", "taprio"};
const std::vector<std::string> kBridgeQdiscs = {"fq", "mqprio", "cbs"};

bool one_of(const std::string& v, const std::vector<std::string>& set) {
    return std::find(set.begin(), set.end(), v) != set.end();
}

std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    double out = 0;
    const auto* end = v.data() + v.size();
    auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc{} || ptr != end || !std::isfinite(out)) {
        throw ConfigError("config: " + key + " expects a number, got '" + v + "'");
    }
    return out;
}

std::int64_t parse_int(const std::string& key, const std::string& v) {
    std::int64_t out = 0;
    const auto* end = v.data() + v.size();
    auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc{} || ptr != end) throw ConfigError("config: " + key + " expects an integer, got '" + v + "'");
    return out;
}

std::int64_t parse_non_negative(const std::string& key, const std::string& v) {
    const auto n = parse_int(key, v);
    if (n < 0) throw ConfigError("config: " + key + " must be non-negative");
    return n;
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError("config: " + key + " expects true or false, got '" + v + "'");
}

TimeNs parse_us(const std::string& key, const std::string& v) {
    const double us = parse_double(key, v);
    return static_cast<TimeNs>(std::llround(us * static_cast<double>(kNsPerUs)));
}

std::string us_text(TimeNs ns) { return metrics::format_number(static_cast<double>(ns) / kNsPerUs); }
std::string bool_text(bool b) { return b ? "true" : "false"; }

std::string fnv_hex(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i, h >>= 4) out[i] = kHex[h & 0xf];
    return out;
}

std::string join(const std::vector<std::pair<std::string, std::string>>& kv,
                 const std::vector<std::string>& skip) {
    std::string out;
    for (const auto& [k, v] : kv) {
        if (one_of(k, skip)) continue;
        out += k + "=" + v + "\n";
    }
    return out;
}

} // namespace

bool ExperimentConfig::txtime() const {
    if (txtime_mode) return *txtime_mode;
    return host_qdisc == "etf" || host_qdisc == "taprio";
}

void ExperimentConfig::set(const std::string& key, const std::string& raw) {
    const std::string v = trim(raw);
    if (key == "topology") {
        if (v != "p2p" && v != "bridged") throw ConfigError("config: topology must be p2p or bridged");
        topology = v;
    } else if (key == "host_qdisc") {
        if (!one_of(v, kHostQdiscs)) throw ConfigError("config: host_qdisc must be one of fq, mqprio, cbs, etf, taprio");
        host_qdisc = v;
    } else if (key == "bridge_qdisc") {
        if (!one_of(v, kBridgeQdiscs)) throw ConfigError("config: bridge_qdisc must be one of fq, mqprio, cbs");
        bridge_qdisc = v;
    } else if (key == "cycle_us") {
        app.cycle = parse_us(key, v);
    } else if (key == "offset_us") {
        app.offset = parse_us(key, v);
    } else if (key == "delta_us") {
        app.delta = parse_us(key, v);
    } else if (key == "n_vars") {
        app.n_vars = static_cast<int>(parse_int(key, v));
    } else if (key == "txtime_mode") {
        if (v == "auto") {
            txtime_mode.reset();
        } else {
            txtime_mode = parse_bool(key, v);
        }
    } else if (key == "base_time_us") {
        app.base_time = parse_us(key, v);
    } else if (key == "packets") {
        app.packets = static_cast<std::uint64_t>(parse_non_negative(key, v));
    } else if (key == "drain_cycles") {
        app.drain_cycles = static_cast<int>(parse_int(key, v));
    } else if (key == "idleslope_pct") {
        idleslope_pct = parse_double(key, v);
    } else if (key == "cbs_mode") {
        if (v != "linux" && v != "standard") throw ConfigError("config: cbs_mode must be linux or standard");
        cbs_standard = v == "standard";
    } else if (key == "ws_us") {
        window = parse_us(key, v);
    } else if (key == "guard_us") {
        guard = parse_us(key, v);
    } else if (key == "be_rate_mbps") {
        be_rate_mbps = parse_double(key, v);
    } else if (key == "be_frame_bytes") {
        be_frame_bytes = static_cast<std::size_t>(parse_non_negative(key, v));
    } else if (key == "transit_host") {
        transit_host = parse_bool(key, v);
    } else if (key == "bridge_latency_us") {
        bridge_latency = parse_us(key, v);
    } else if (key == "bridge_spread_us") {
        bridge_spread = parse_us(key, v);
    } else if (key == "launch_time") {
        launch_time = parse_bool(key, v);
    } else if (key == "repetitions") {
        repetitions = static_cast<int>(parse_int(key, v));
    } else if (key == "seed") {
        seed = static_cast<std::uint64_t>(parse_non_negative(key, v));
    } else if (key == "noise") {
        if (v != "none" && v != "e3" && v != "d") throw ConfigError("config: noise must be none, e3 or d");
        noise = v;
    } else if (key == "threads") {
        threads = static_cast<unsigned>(parse_non_negative(key, v));
    } else {
        throw ConfigError("config: unknown key '" + key + "'");
    }
}

std::vector<std::pair<std::string, std::string>> ExperimentConfig::entries() const {
    using metrics::format_number;
    return {
        {"topology", topology},
        {"host_qdisc", host_qdisc},
        {"bridge_qdisc", bridge_qdisc},
        {"cycle_us", us_text(app.cycle)},
        {"offset_us", us_text(app.offset)},
        {"delta_us", us_text(app.delta)},
        {"n_vars", format_number(app.n_vars)},
        {"txtime_mode", txtime_mode ? bool_text(*txtime_mode) : "auto"},
        {"base_time_us", us_text(app.base_time)},
        {"packets", format_number(app.packets)},
        {"drain_cycles", format_number(app.drain_cycles)},
        {"idleslope_pct", format_number(idleslope_pct)},
        {"cbs_mode", cbs_standard ? "standard" : "linux"},
        {"ws_us", us_text(window)},
        {"guard_us", us_text(guard)},
        {"be_rate_mbps", format_number(be_rate_mbps)},
        {"be_frame_bytes", format_number(static_cast<std::uint64_t>(be_frame_bytes))},
        {"transit_host", bool_text(transit_host)},
        {"bridge_latency_us", us_text(bridge_latency)},
        {"bridge_spread_us", us_text(bridge_spread)},
        {"launch_time", bool_text(launch_time)},
        {"repetitions", format_number(repetitions)},
        {"seed", format_number(seed)},
        {"noise", noise},
        {"threads", format_number(static_cast<std::uint64_t>(threads))},
    };
}

std::vector<std::string> ExperimentConfig::validate() const {
    std::vector<std::string> warnings;
    app::AppConfig a = app;
    a.txtime_mode = txtime();
    try {
        warnings = a.validate();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    if (!one_of(host_qdisc, kHostQdiscs)) throw ConfigError("config: unknown host qdisc '" + host_qdisc + "'");
    if (!one_of(bridge_qdisc, kBridgeQdiscs)) throw ConfigError("config: unknown bridge qdisc '" + bridge_qdisc + "'");
    if ((host_qdisc == "etf" || host_qdisc == "taprio") && !txtime()) {
        throw ConfigError("config: " + host_qdisc + " requires txtime_mode");
    }
    if (host_qdisc == "cbs" || (bridged() && bridge_qdisc == "cbs")) {
        if (!(idleslope_pct > 0)) throw ConfigError("config: idleslope_pct must be positive");
    }
    if (host_qdisc == "taprio") {
        try {
            const auto s = build_taprio_schedule(app.cycle, app.offset, window, guard);
            if (s.cycle_time() != app.cycle) throw ConfigError("config: taprio schedule does not sum to the cycle");
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("config: ") + e.what());
        }
    }
    if (be_rate_mbps < 0 || be_rate_mbps > 1000) throw ConfigError("config: be_rate_mbps must lie in [0, 1000]");
    if (be_frame_bytes < 84 || be_frame_bytes > 1542) {
        throw ConfigError("config: be_frame_bytes must lie in [84, 1542]");
    }
    if (transit_host && !bridged()) throw ConfigError("config: transit_host needs the bridged topology");
    if (bridge_latency < 0 || bridge_spread < 0) throw ConfigError("config: bridge latency must be non-negative");
    if (repetitions < 1) throw ConfigError("config: repetitions must be at least 1");
    try {
        const auto profile = sim::noise_preset(noise);
        if (txtime() && app.delta <= profile.wake.tail_max) {
            warnings.push_back("delta does not exceed the worst scheduling latency of the '" + noise + "' profile");
        }
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return warnings;
}

std::string ExperimentConfig::hash() const { return fnv_hex(join(entries(), {"seed", "repetitions", "threads"})); }

std::string ExperimentConfig::comparable_key() const {
    return join(entries(), {"topology", "bridge_qdisc", "bridge_latency_us", "bridge_spread_us", "transit_host",
                            "repetitions", "threads"});
}

ExperimentConfig parse_config(std::istream& in, const std::string& origin) {
    ExperimentConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value");
        }
        try {
            cfg.set(trim(line.substr(0, eq)), line.substr(eq + 1));
        } catch (const ConfigError& e) {
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    return parse_config(in, path);
}

void apply_overrides(ExperimentConfig& cfg, const std::vector<std::string>& overrides) {
    for (const auto& o : overrides) {
        const auto eq = o.find('=');
        if (eq == std::string::npos) throw ConfigError("config: override '" + o + "' is not key=value");
        cfg.set(trim(o.substr(0, eq)), o.substr(eq + 1));
    }
}

} // namespace tsnlab::harness
