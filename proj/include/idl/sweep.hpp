#pragma once

#include <string>
#include <vector>

#include "idl/trial.hpp"

namespace idl {

struct SweepConfig {
    std::string preset = "sim16";
    std::vector<double> etas{1e-5, 1e-4, 1e-3, 1e-2, 1e-1};
    std::vector<unsigned> seeds{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    std::vector<unsigned> reflex_seeds{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    int n_steps = 1000;
    int reflex_steps = 1000;
    std::string overrides_json;  // applied on top of the preset per trial
    bool parallel_cells = true;
};

SweepConfig sweep_config_from_json(const std::string& json_text);

struct SweepCell {
    double eta = 0.0;
    unsigned seed = 0;
    double rms = 0.0;
    std::optional<int> success_step;
    TrialStatus status = TrialStatus::ok;
};

struct EtaSummary {
    double eta = 0.0;
    double rms_median = 0.0, rms_q1 = 0.0, rms_q3 = 0.0;
    /// Median success step; cells that never succeed are censored at
    /// n_steps + 1 and counted in n_censored.
    double success_median = 0.0;
    int n_censored = 0;
};

struct SweepSummary {
    SweepConfig config;
    double baseline_mean_abs_error = 0.0;  // over all reflex cells
    std::vector<SweepCell> reflex_cells;
    double reflex_rms_median = 0.0;
    std::vector<SweepCell> cells;          // learning cells, (eta, seed) order
    std::vector<EtaSummary> per_eta;
};

/// Runs the reflex trials first (they pin the success baseline), then the
/// full eta x seed grid. Cells are independent and may run concurrently;
/// results are merged by grid position.
SweepSummary run_sweep(const SweepConfig& cfg);

std::string sweep_summary_to_json(const SweepSummary& s);

}  // namespace idl
