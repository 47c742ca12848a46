#pragma once

#include <optional>
#include <string>

#include "idl/filter_bank.hpp"
#include "idl/network.hpp"
#include "idl/world.hpp"

namespace idl {

/// Everything one trial needs, assembled from a preset name plus optional
/// JSON overrides.
struct TrialConfig {
    std::string preset = "sim16";
    double eta = 1e-2;
    unsigned seed = 0;
    int n_steps = 1000;
    bool reflex_only = false;
    std::optional<double> baseline;  // reflex mean |e_c|, enables success_step

    WorldConfig world;
    FilterBankConfig filter;
    NetworkConfig network;
    double error_gain_sign = 1.0;
    int learn_error_levels = 16;
    TransferFunction t_r;  // unity unless overridden

    ExecMode mode = ExecMode::serial;

    int n_predictors() const {
        return world.robot.sensors.rows * world.robot.sensors.sensors_per_row / 2;
    }
};

/// Built-in configurations. "sim16": one 16-sensor strip, 8 predictors,
/// 5 taps peaking over [3,10], layers 40-12-6-1. "cam6x16": a 6x16 grid,
/// 48 predictors, taps over [5,10], 11 hidden layers of 11 neurons and a
/// 3-neuron head with graded steering gains.
TrialConfig make_preset(const std::string& name);

/// Apply a JSON override document on top of a config (keys: eta, seed,
/// steps, reflex_only, baseline, filter{...}, steering{...}, network{...},
/// robot{...}, track{...}, t_r{num,den}, error_gain_sign, dt,
/// off_track_limit).
void apply_overrides_json(TrialConfig& cfg, const std::string& json_text);

TrialConfig load_trial_config(const std::string& preset,
                              const std::optional<std::string>& overrides_path);

/// Echo of the effective configuration for summary files.
std::string config_to_json(const TrialConfig& cfg);

}  // namespace idl
