#pragma once

// Experiment runner: config validation/resolution, trial fan-out to a
// worker pool, CSV + summary + manifest emission, and re-summarization
// from an existing CSV.  Output content is worker-count invariant.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "npplab/landscape.hpp"

namespace npplab {

inline constexpr const char* kArtifactVersion = "1.0.0";

// Validates the config and resolves every symbolic field ("auto" eta,
// "ldp"/"lcd" eps presets, defaults) to concrete values.  Throws
// SchemaError naming the offending field.
nlohmann::json resolve_config(const nlohmann::json& config);

struct RunResult {
    nlohmann::json resolved;
    std::string csv;             // trial records, trial order
    nlohmann::json summary;      // estimates + measured constants
    nlohmann::json manifest;
    std::vector<std::string> outputs;  // paths written (run_experiment only)
};

// Executes the experiment in memory; deterministic in (resolved, workers
// notwithstanding).  No files touched.
RunResult run_config(const nlohmann::json& config, int workers);

// run_config plus files: <experiment>.csv, summary.json, manifest.json
// under out_dir (created if needed).
RunResult run_experiment(const nlohmann::json& config, const std::string& out_dir, int workers);

// Recompute the summary for a resolved config from its CSV text.
nlohmann::json summarize_csv(const nlohmann::json& resolved, const std::string& csv_text);

// Evaluate fn(i) for i in [0, count) across `workers` threads; exceptions
// are captured and rethrown on the caller thread.
void parallel_for(std::uint64_t count, int workers, const std::function<void(std::uint64_t)>& fn);

nlohmann::json estimate_to_json(const EstimateCI& ci);

}  // namespace npplab
