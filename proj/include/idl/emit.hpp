#pragma once

#include <string>

#include "idl/sweep.hpp"
#include "idl/trial.hpp"

namespace idl {

/// Writes trial.csv, weights_layer0.pgm, weight_distance.csv and
/// summary.json into outdir (created if missing). Rejects empty logs.
void emit_trial(const TrialLog& log, const std::string& outdir);

/// Writes summary.json and cells.csv for a sweep.
void emit_sweep(const SweepSummary& summary, const std::string& outdir);

/// Serialise a matrix as an 8-bit binary PGM (P5); values clamped to [0,1].
void write_pgm(const std::vector<std::vector<double>>& matrix, const std::string& path);

}  // namespace idl
