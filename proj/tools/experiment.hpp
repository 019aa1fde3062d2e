#ifndef ROLLAGE_TOOLS_EXPERIMENT_HPP
#define ROLLAGE_TOOLS_EXPERIMENT_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rollage/durbin.hpp"
#include "rollage/model_spec.hpp"

namespace rollage::harness {

struct ModelEntry {
    std::string id;
    ModelSpec spec;
};

struct PbarRule {
    bool fixed = false;
    int value = 0;  // fixed only
};

struct ExperimentConfig {
    std::vector<ModelEntry> models;
    std::vector<int> sample_sizes;
    std::vector<std::uint64_t> seeds;
    std::vector<PtildeCriterion> criteria;
    double delta = 3.0;
    PbarRule pbar_rule;
    std::filesystem::path output_dir;
    int parallelism = 1;
};

ExperimentConfig parse_experiment_config(const nlohmann::json& j);

/// One grid cell per (model, n, seed, criterion). Returns the number of cells
/// that completed without an error column; throws only on configuration or
/// unrecoverable I/O problems.
struct ExperimentOutcome {
    int completed = 0;
    int failed = 0;
    int skipped = 0;  // journaled cells from an earlier run
};

ExperimentOutcome run_experiment(const ExperimentConfig& config);

}  // namespace rollage::harness

#endif
