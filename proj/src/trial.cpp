#include "idl/trial.hpp"

#include <cmath>

namespace idl {

std::string to_string(TrialStatus s) {
    switch (s) {
        case TrialStatus::ok: return "ok";
        case TrialStatus::lost_line: return "lost line";
        case TrialStatus::numeric_abort: return "numeric abort";
    }
    return "unknown";
}

namespace {

struct Assembled {
    World world;
    FilterBank bank;
    LayeredNetwork net;
    LoopWiring wiring;
};

Assembled assemble(const TrialConfig& cfg) {
    if (cfg.eta < 0.0) throw ConfigError("trial: eta must be non-negative");
    if (cfg.n_steps <= 0) throw ConfigError("trial: n_steps must be positive");
    TrialConfig effective = cfg;
    if (cfg.reflex_only) {
        effective.eta = 0.0;
        effective.world.steering.beta = 0.0;
    }
    NetworkConfig net_cfg = effective.network;
    net_cfg.seed = effective.seed;
    net_cfg.mode = effective.mode;
    LoopWiring wiring{effective.eta, effective.error_gain_sign,
                      effective.learn_error_levels, effective.t_r};
    wiring.t_r.reset();
    return {World(effective.world),
            FilterBank(effective.n_predictors(), effective.filter, effective.mode),
            LayeredNetwork(net_cfg), wiring};
}

// Shared inner loop; on_step sees each record as it is produced.
template <typename OnStep>
void run_core(const TrialConfig& cfg, Assembled& a, TrialStatus& status, int& steps_run,
              std::string& diagnostics, OnStep&& on_step) {
    status = TrialStatus::ok;
    steps_run = 0;
    for (int k = 0; k < cfg.n_steps; ++k) {
        StepRecord rec;
        try {
            rec = run_step(a.world, a.net, a.bank, a.wiring);
        } catch (const NumericError& e) {
            status = TrialStatus::numeric_abort;
            diagnostics = e.what();
            return;
        }
        on_step(rec);
        ++steps_run;
        if (a.world.line_lost()) {
            status = TrialStatus::lost_line;
            return;
        }
    }
}

}  // namespace

TrialLog run_trial(const TrialConfig& cfg) {
    Assembled a = assemble(cfg);
    TrialLog log;
    log.config = cfg;
    log.weight_distances.assign(static_cast<std::size_t>(a.net.n_weight_layers()), {});
    for (auto& series : log.weight_distances) series.reserve(static_cast<std::size_t>(cfg.n_steps));
    log.steps.reserve(static_cast<std::size_t>(cfg.n_steps));

    run_core(cfg, a, log.status, log.steps_run, log.diagnostics, [&](const StepRecord& rec) {
        log.steps.push_back(rec);
        const auto d = a.net.weight_distances();
        for (std::size_t l = 0; l < d.size(); ++l) log.weight_distances[l].push_back(d[l]);
    });

    if (!log.steps.empty()) {
        std::vector<double> e;
        e.reserve(log.steps.size());
        for (const auto& s : log.steps) e.push_back(s.e_c);
        log.rms_error = metrics::rms(e);
        if (cfg.baseline && *cfg.baseline > 0.0)
            log.success_step = metrics::success_step(e, *cfg.baseline);
    }
    log.final_weight_map = a.net.first_layer_map();
    log.final_weights_json = a.net.weights_to_json();
    return log;
}

TrialStats run_trial_stats(const TrialConfig& cfg) {
    Assembled a = assemble(cfg);
    TrialStats stats;
    std::string diagnostics;
    double sum_sq = 0.0;
    metrics::SuccessTracker tracker(cfg.baseline.value_or(1.0));

    run_core(cfg, a, stats.status, stats.steps_run, diagnostics, [&](const StepRecord& rec) {
        sum_sq += rec.e_c * rec.e_c;
        tracker.push(rec.e_c);
    });

    if (stats.steps_run > 0) stats.rms_error = std::sqrt(sum_sq / stats.steps_run);
    if (cfg.baseline && *cfg.baseline > 0.0) stats.success_step = tracker.result();
    return stats;
}

}  // namespace idl
