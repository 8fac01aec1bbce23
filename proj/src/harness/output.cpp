#include "tsnlab/harness/output.hpp"

#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <ostream>

#include "tsnlab/metrics/csv.hpp"

namespace tsnlab::harness {

namespace fs = std::filesystem;
using metrics::TapPoint;

namespace {

std::ofstream open_out(const fs::path& p) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    return out;
}

const std::vector<TimeNs>& arrivals(const RunResult& r, TapPoint point) {
    return point == TapPoint::PIngress ? r.p_ingress : r.l_ingress;
}

constexpr TapPoint kEcdfPoints[] = {TapPoint::LIngress, TapPoint::PIngress};

void write_ecdfs(const fs::path& dir, const std::string& prefix, const std::vector<RunResult>& runs, TimeNs cycle,
                 std::vector<fs::path>& written) {
    for (TapPoint point : kEcdfPoints) {
        const fs::path p = dir / ("ecdf_" + prefix + std::string(metrics::tap_name(point)) + ".csv");
        auto out = open_out(p);
        metrics::write_ecdf_csv(out, pooled_ecdf(runs, point, cycle));
        written.push_back(p);
    }
}

} // namespace

std::vector<metrics::EcdfPoint> pooled_ecdf(const std::vector<RunResult>& runs, TapPoint point, TimeNs cycle) {
    std::vector<TimeNs> deviations;
    for (const auto& r : runs) {
        for (TimeNs s : metrics::inter_arrival_spacings(arrivals(r, point))) deviations.push_back(s - cycle);
    }
    return metrics::ecdf_of_deviations(std::move(deviations));
}

void write_trace_jsonl(std::ostream& out, const std::vector<RunResult>& runs) {
    for (const auto& r : runs) {
        for (const auto& t : r.trace) {
            nlohmann::ordered_json j;
            j["run_id"] = t.run_id;
            j["seq"] = t.seq;
            j["point"] = std::string(metrics::tap_name(t.point));
            j["key"] = t.key;
            j["time_ns"] = t.time_ns;
            out << j.dump() << '\n';
        }
    }
}

std::vector<fs::path> write_run_outputs(const fs::path& dir, const ExperimentConfig& cfg,
                                        const std::vector<RunResult>& runs) {
    fs::create_directories(dir);
    std::vector<fs::path> written;

    std::vector<metrics::Summary> rows;
    for (const auto& r : runs) rows.push_back(r.summary);
    {
        const fs::path p = dir / "summary.csv";
        auto out = open_out(p);
        metrics::write_summary_csv(out, rows);
        written.push_back(p);
    }
    write_ecdfs(dir, "", runs, cfg.app.cycle, written);

    const bool traced = std::any_of(runs.begin(), runs.end(), [](const RunResult& r) { return !r.trace.empty(); });
    if (traced) {
        const fs::path p = dir / "trace.jsonl";
        auto out = open_out(p);
        write_trace_jsonl(out, runs);
        written.push_back(p);
    }
    return written;
}

std::vector<fs::path> write_sweep_outputs(const fs::path& dir, const Sweep& sweep,
                                          const std::vector<std::vector<RunResult>>& runs) {
    if (runs.size() != sweep.points.size()) throw std::invalid_argument("sweep output: result count mismatch");
    fs::create_directories(dir);
    std::vector<fs::path> written;

    std::vector<metrics::Summary> rows;
    for (const auto& point_runs : runs) {
        for (const auto& r : point_runs) rows.push_back(r.summary);
    }
    {
        const fs::path p = dir / "summary.csv";
        auto out = open_out(p);
        metrics::write_summary_csv(out, rows);
        written.push_back(p);
    }
    {
        const fs::path p = dir / ("sweep_" + sweep.name + ".csv");
        auto out = open_out(p);
        metrics::CsvWriter csv(out);
        std::vector<std::string> header = sweep.param_columns;
        for (const auto& c : sweep_result_columns()) header.push_back(c);
        csv.row(header);
        for (std::size_t i = 0; i < sweep.points.size(); ++i) csv.row(sweep_row(sweep.points[i], runs[i]));
        written.push_back(p);
    }
    for (std::size_t i = 0; i < sweep.points.size(); ++i) {
        write_ecdfs(dir, sweep.points[i].label + "_", runs[i], sweep.points[i].cfg.app.cycle, written);
    }

    std::vector<RunResult> flat_traced;
    for (const auto& point_runs : runs) {
        for (const auto& r : point_runs) {
            if (!r.trace.empty()) flat_traced.push_back(r);
        }
    }
    if (!flat_traced.empty()) {
        const fs::path p = dir / "trace.jsonl";
        auto out = open_out(p);
        write_trace_jsonl(out, flat_traced);
        written.push_back(p);
    }
    return written;
}

} // namespace tsnlab::harness
