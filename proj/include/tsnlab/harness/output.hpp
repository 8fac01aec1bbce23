#pragma once

// Result files: summary.csv, ecdf_<point>.csv, sweep_<name>.csv and the
// optional trace.jsonl.

#include <filesystem>
#include <string>
#include <vector>

#include "tsnlab/harness/sweep.hpp"

namespace tsnlab::harness {

/// IS deviations of every repetition pooled into one ECDF.
std::vector<metrics::EcdfPoint> pooled_ecdf(const std::vector<RunResult>& runs, metrics::TapPoint point,
                                            TimeNs cycle);

/// Writes summary.csv, ecdf_L_ingress.csv, ecdf_P_ingress.csv and, when the
/// runs carry trace records, trace.jsonl. Returns the files written.
std::vector<std::filesystem::path> write_run_outputs(const std::filesystem::path& dir, const ExperimentConfig& cfg,
                                                     const std::vector<RunResult>& runs);

/// Writes summary.csv over every run, sweep_<name>.csv with one row per
/// point and ecdf_<label>_<point>.csv per point.
std::vector<std::filesystem::path> write_sweep_outputs(const std::filesystem::path& dir, const Sweep& sweep,
                                                       const std::vector<std::vector<RunResult>>& runs);

void write_trace_jsonl(std::ostream& out, const std::vector<RunResult>& runs);

} // namespace tsnlab::harness
