#pragma once

#include <string>
#include <vector>

#include "idl/config.hpp"
#include "idl/metrics.hpp"

namespace idl {

enum class TrialStatus { ok, lost_line, numeric_abort };

std::string to_string(TrialStatus s);

/// Full per-step record of one trial, enough for all post-hoc analysis.
struct TrialLog {
    std::vector<StepRecord> steps;
    std::vector<std::vector<double>> weight_distances;  // [layer][step]
    double rms_error = 0.0;
    std::optional<int> success_step;
    std::vector<std::vector<double>> final_weight_map;
    std::string final_weights_json;  // flat {layer -> row-major matrix}
    TrialStatus status = TrialStatus::ok;
    int steps_run = 0;
    std::string diagnostics;
    TrialConfig config;
};

/// Reduced result for sweep cells.
struct TrialStats {
    double rms_error = 0.0;
    std::optional<int> success_step;
    TrialStatus status = TrialStatus::ok;
    int steps_run = 0;
};

/// Run one trial retaining the full log.
TrialLog run_trial(const TrialConfig& cfg);

/// Run one trial keeping only streaming statistics. The baseline for the
/// success condition comes from cfg.baseline when set.
TrialStats run_trial_stats(const TrialConfig& cfg);

}  // namespace idl
