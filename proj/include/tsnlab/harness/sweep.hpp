#pragma once

// Named parameter sweeps over a base configuration.

#include <string>
#include <vector>

#include "tsnlab/harness/experiment.hpp"

namespace tsnlab::harness {

struct SweepPoint {
    std::string label; ///< used in ECDF file names
    ExperimentConfig cfg;
    std::vector<std::string> params; ///< values of the sweep's parameter columns
};

struct Sweep {
    std::string name;
    std::vector<std::string> param_columns;
    std::vector<SweepPoint> points;
};

const std::vector<std::string>& sweep_names();

/// Expands a named sweep. Throws ConfigError for an unknown name.
Sweep make_sweep(const std::string& name, const ExperimentConfig& base);

/// Columns that follow the parameter columns in every sweep table.
const std::vector<std::string>& sweep_result_columns();

/// One table row: parameter values followed by results pooled over repetitions.
std::vector<std::string> sweep_row(const SweepPoint& point, const std::vector<RunResult>& runs);

} // namespace tsnlab::harness
