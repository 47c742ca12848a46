// Command-line harness: single trials, sweep grids and the gradient checks.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "idl/config.hpp"
#include "idl/emit.hpp"
#include "idl/gradcheck.hpp"
#include "idl/sweep.hpp"
#include "idl/trial.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitLostLine = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitConfig = 4;

int status_to_exit(idl::TrialStatus s) {
    switch (s) {
        case idl::TrialStatus::ok: return kExitOk;
        case idl::TrialStatus::lost_line: return kExitLostLine;
        case idl::TrialStatus::numeric_abort: return kExitNumeric;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"closed-loop forward-model learner: line-follower harness"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "run one trial and emit its artifacts");
    std::string preset = "sim16";
    double eta = 1e-2;
    unsigned seed = 0;
    int steps = 1000;
    std::string outdir = "out";
    bool reflex_only = false;
    bool parallel = false;
    bool save_weights = false;
    std::optional<double> baseline;
    std::optional<std::string> config_path;
    run->add_option("--preset", preset, "sim16 or cam6x16");
    run->add_option("--eta", eta, "learning rate");
    run->add_option("--seed", seed, "weight-init seed");
    run->add_option("--steps", steps, "steps per trial");
    run->add_option("--out", outdir, "output directory")->required();
    run->add_flag("--reflex-only", reflex_only, "disable learning and the learned action");
    run->add_flag("--parallel", parallel, "use the OpenMP kernels");
    run->add_flag("--save-weights", save_weights, "also write weights.json");
    run->add_option("--baseline", baseline,
                    "reflex mean |e_c|; enables the success-step metric");
    run->add_option("--config", config_path, "JSON override file");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "run an eta x seed grid");
    std::string grid_path;
    std::string sweep_out = "out";
    sweep->add_option("--grid", grid_path, "grid JSON file")->required();
    sweep->add_option("--out", sweep_out, "output directory")->required();

    // gradcheck
    auto* gc = app.add_subcommand("gradcheck", "finite-difference checks of the learning rule");
    std::string gc_preset = "sim16";
    unsigned gc_seed = 0;
    int gc_networks = 5;
    gc->add_option("--preset", gc_preset, "network shape to check");
    gc->add_option("--seed", gc_seed, "random seed");
    gc->add_option("--networks", gc_networks, "number of random networks");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            idl::TrialConfig cfg = idl::load_trial_config(preset, config_path);
            cfg.eta = eta;
            cfg.seed = seed;
            cfg.n_steps = steps;
            cfg.reflex_only = reflex_only;
            if (baseline) cfg.baseline = baseline;
            cfg.mode = parallel ? idl::ExecMode::openmp : idl::ExecMode::serial;

            const idl::TrialLog log = idl::run_trial(cfg);
            idl::emit_trial(log, outdir);
            if (save_weights) {
                std::ofstream wout(outdir + "/weights.json", std::ios::binary);
                if (!wout)
                    throw std::runtime_error("cannot open for writing: " + outdir +
                                             "/weights.json");
                wout << log.final_weights_json << "\n";
            }
            std::cout << "status: " << idl::to_string(log.status)
                      << "  steps: " << log.steps_run << "  rms: " << log.rms_error;
            if (log.success_step) std::cout << "  success_step: " << *log.success_step;
            std::cout << "\n";
            return status_to_exit(log.status);
        }
        if (*sweep) {
            std::ifstream in(grid_path);
            if (!in) throw idl::ConfigError("cannot open grid file: " + grid_path);
            std::stringstream ss;
            ss << in.rdbuf();
            const idl::SweepConfig cfg = idl::sweep_config_from_json(ss.str());
            const idl::SweepSummary summary = idl::run_sweep(cfg);
            idl::emit_sweep(summary, sweep_out);
            std::cout << "baseline mean |e_c|: " << summary.baseline_mean_abs_error << "\n";
            for (const auto& es : summary.per_eta)
                std::cout << "eta " << es.eta << ": rms median " << es.rms_median
                          << ", success median " << es.success_median << " (" << es.n_censored
                          << " censored)\n";
            return kExitOk;
        }
        if (*gc) {
            const idl::TrialConfig cfg = idl::make_preset(gc_preset);
            const idl::GradCheckReport report = idl::run_gradcheck(
                cfg.network.layer_sizes, cfg.network.output_gains, gc_seed, gc_networks);
            std::cout << report.to_string();
            return report.pass() ? 0 : 1;
        }
    } catch (const idl::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const idl::NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitOk;
}
