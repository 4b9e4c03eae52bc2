#pragma once

#include <map>
#include <string>
#include <vector>

#include "clustor/dataset.hpp"

namespace clustor {

inline constexpr const char* kToolVersion = "clustor 1.0.0";

// A fully specified experiment: one system, one experiment type, typed
// numeric parameters, optional grid, output format/path.
struct ExperimentSpec {
    std::string system;      // free | barrier | oscillator
    std::string experiment;  // dynamics_grid | activation | density | period_scan |
                             // action_scan | quantization_scan | snapshot | sweep
    std::map<std::string, double> params;
    bool has_grid = false;
    double grid_from = 0.0;
    double grid_to = 0.0;
    int grid_n = 0;
    std::string format = "csv";  // csv | json
    std::string out_path;
    double tol = 1e-10;
};

// Flat "key = value" file with [section] headers; sections: experiment,
// parameters, grid, output.  Unknown sections or keys are rejected.
ExperimentSpec parse_spec_file(const std::string& path);

// A "--set section.key=value" override applied on top of a parsed spec.
void apply_override(ExperimentSpec& spec, const std::string& assignment);

// Parameter/type validation; throws InvalidConfig naming the offending key.
void validate_spec(const ExperimentSpec& spec);

Dataset run_experiment(const ExperimentSpec& spec);

// The figure registry: ids 1..26 map to pinned experiment parameters; the
// registry is the documented source of every figure's configuration.
Dataset figure_dataset(int id);
int figure_count();

std::string render(const Dataset& ds, const std::string& format);

}  // namespace clustor
