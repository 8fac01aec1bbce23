#include "tsnlab/metrics/csv.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

namespace tsnlab::metrics {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0) return "0"; // folds -0
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

std::string format_number(std::int64_t v) { return std::to_string(v); }
std::string format_number(std::uint64_t v) { return std::to_string(v); }
std::string format_number(int v) { return std::to_string(v); }

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

void CsvWriter::row(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out_ << ',';
        out_ << csv_escape(fields[i]);
    }
    out_ << '\n';
}

const std::vector<std::string>& summary_columns() {
    static const std::vector<std::string> cols = {
        "config_hash",   "seed",           "repetition",    "topology",         "host_qdisc",
        "bridge_qdisc",  "published",      "returned",      "drops_P",          "drops_L",
        "drops_b_to_L",  "drops_b_to_P",   "d_P",           "d_L",              "d_b_to_L",
        "d_b_to_P",      "d_sigma",        "rtt_mean_us",   "rtt_median_us",    "rtt_max_us",
        "jitter_us",     "jitter_std_us",  "jitter_p2p_us", "jitter_max_dev_us", "jitter_P_ingress_us",
        "missed_reads_P", "missed_reads_L", "late_launches", "l_B_us",
    };
    return cols;
}

std::vector<std::string> summary_row(const Summary& s) {
    return {
        s.config_hash,
        format_number(s.seed),
        format_number(s.repetition),
        s.topology,
        s.host_qdisc,
        s.bridge_qdisc,
        format_number(s.published),
        format_number(s.returned),
        format_number(s.drops.p),
        format_number(s.drops.l),
        format_number(s.drops.b_to_l),
        format_number(s.drops.b_to_p),
        format_number(s.rates.d_p),
        format_number(s.rates.d_l),
        format_number(s.rates.d_b_to_l),
        format_number(s.rates.d_b_to_p),
        format_number(s.rates.d_sigma),
        format_number(s.rtt.mean_us),
        format_number(s.rtt.median_us),
        format_number(s.rtt.max_us),
        format_number(s.jitter.mean_abs_dev_us),
        format_number(s.jitter.std_us),
        format_number(s.jitter.peak_to_peak_us),
        format_number(s.jitter.max_dev_us),
        format_number(s.jitter_return.mean_abs_dev_us),
        format_number(s.missed_reads_p),
        format_number(s.missed_reads_l),
        format_number(s.late_launches),
        s.l_b_us ? format_number(*s.l_b_us) : std::string{},
    };
}

void write_summary_csv(std::ostream& out, const std::vector<Summary>& rows) {
    CsvWriter w(out);
    w.row(summary_columns());
    for (const auto& s : rows) w.row(summary_row(s));
}

void write_ecdf_csv(std::ostream& out, const std::vector<EcdfPoint>& points) {
    CsvWriter w(out);
    w.row({"deviation_ns", "fraction"});
    for (const auto& p : points) w.row({format_number(p.deviation_ns), format_number(p.fraction)});
}

} // namespace tsnlab::metrics
