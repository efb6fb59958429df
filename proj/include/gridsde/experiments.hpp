#pragma once

#include "gridsde/harness.hpp"
#include "gridsde/report.hpp"

namespace gridsde {

// Closed set of experiment ids, sorted.
std::vector<std::string> experiment_ids();

struct ExperimentConfig {
    std::string experiment;
    std::string model_id;                           // empty = experiment default
    std::map<std::string, double> model_overrides;  // parameter overrides by name
    std::uint64_t seed = 1;
    int n_paths = 0;          // 0 = experiment default
    std::vector<int> mesh_cells;
    double lattice_step = 0.0;
    double horizon = 1.0;
    std::vector<double> eval_times;
    std::string out_dir;
    bool dump_samples = false;
    int threads = 0;  // 0 = auto (GRIDSDE_THREADS env or OpenMP default)
    int verbosity = 1;
};

// Parses and validates; throws std::invalid_argument naming the offending field.
ExperimentConfig config_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json config_to_json(const ExperimentConfig& config);

// Fills in experiment-specific defaults for the zero/empty fields.
ExperimentConfig resolve_defaults(ExperimentConfig config);

// Runs the experiment; deterministic given (config, seed). When out_dir is
// set, writes report.json, plotdata/*.tsv and (behind dump_samples)
// samples/*.csv.
ExperimentReport run_experiment(const ExperimentConfig& config);

// Machine-readable catalog listing (sorted ids, dimensions, oracle availability).
nlohmann::ordered_json list_catalog_json();

}  // namespace gridsde
