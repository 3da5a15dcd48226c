#pragma once
// Config-driven experiment runner. Each experiment writes CSV tables, plain
// plot data, a manifest (config echo, version, wall time) and a summary of
// fitted statistics. CSV bodies are byte-stable across reruns.

#include <filesystem>
#include <string>
#include <vector>

#include "qnm/config.hpp"

namespace qnm {

inline constexpr const char* kVersion = "qnmsim 0.1.0";

struct ExperimentInfo {
    std::string name;
    std::string description;
};

// Stable-ordered list of the available experiments.
const std::vector<ExperimentInfo>& experiment_list();

// Structure checks only (experiment known, required keys present, sweep lists
// non-empty). Throws config errors naming the offending key.
void validate_experiment_config(const Config& c);

// Runs the experiment named in the config; writes files under outdir.
void run_experiment(const Config& c, const std::filesystem::path& outdir, int workers);

// Worker count from QNMSIM_WORKERS, clamped to [1, 16].
int worker_count_from_env();

}  // namespace qnm
