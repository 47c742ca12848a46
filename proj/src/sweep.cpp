#include "idl/sweep.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "idl/config.hpp"

namespace idl {

using nlohmann::json;

SweepConfig sweep_config_from_json(const std::string& json_text) {
    SweepConfig cfg;
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("grid JSON parse error: ") + e.what());
    }
    if (j.contains("preset")) cfg.preset = j["preset"].get<std::string>();
    if (j.contains("etas")) cfg.etas = j["etas"].get<std::vector<double>>();
    if (j.contains("seeds")) cfg.seeds = j["seeds"].get<std::vector<unsigned>>();
    if (j.contains("reflex_seeds"))
        cfg.reflex_seeds = j["reflex_seeds"].get<std::vector<unsigned>>();
    if (j.contains("steps")) cfg.n_steps = j["steps"].get<int>();
    if (j.contains("reflex_steps")) cfg.reflex_steps = j["reflex_steps"].get<int>();
    if (j.contains("overrides")) cfg.overrides_json = j["overrides"].dump();
    if (j.contains("parallel_cells")) cfg.parallel_cells = j["parallel_cells"].get<bool>();
    if (cfg.etas.empty() || cfg.seeds.empty() || cfg.reflex_seeds.empty())
        throw ConfigError("sweep grid: etas, seeds and reflex_seeds must be nonempty");
    return cfg;
}

namespace {

TrialConfig cell_config(const SweepConfig& sweep, double eta, unsigned seed, bool reflex) {
    TrialConfig cfg = make_preset(sweep.preset);
    if (!sweep.overrides_json.empty()) apply_overrides_json(cfg, sweep.overrides_json);
    cfg.eta = eta;
    cfg.seed = seed;
    cfg.n_steps = reflex ? sweep.reflex_steps : sweep.n_steps;
    cfg.reflex_only = reflex;
    return cfg;
}

}  // namespace

SweepSummary run_sweep(const SweepConfig& cfg) {
    SweepSummary out;
    out.config = cfg;

    // Reflex pass: establishes the success baseline as the mean |e_c|
    // across every reflex step.
    const int n_reflex = static_cast<int>(cfg.reflex_seeds.size());
    out.reflex_cells.resize(static_cast<std::size_t>(n_reflex));
    std::vector<double> abs_sums(static_cast<std::size_t>(n_reflex), 0.0);
    std::vector<long> abs_counts(static_cast<std::size_t>(n_reflex), 0);
#pragma omp parallel for schedule(dynamic) if (cfg.parallel_cells)
    for (int i = 0; i < n_reflex; ++i) {
        TrialConfig tc = cell_config(cfg, 0.0, cfg.reflex_seeds[static_cast<std::size_t>(i)], true);
        const TrialLog log = run_trial(tc);
        SweepCell cell;
        cell.eta = 0.0;
        cell.seed = tc.seed;
        cell.rms = log.rms_error;
        cell.status = log.status;
        out.reflex_cells[static_cast<std::size_t>(i)] = cell;
        double s = 0.0;
        for (const auto& rec : log.steps) s += std::abs(rec.e_c);
        abs_sums[static_cast<std::size_t>(i)] = s;
        abs_counts[static_cast<std::size_t>(i)] = static_cast<long>(log.steps.size());
    }
    double total_abs = 0.0;
    long total_n = 0;
    for (int i = 0; i < n_reflex; ++i) {
        total_abs += abs_sums[static_cast<std::size_t>(i)];
        total_n += abs_counts[static_cast<std::size_t>(i)];
    }
    out.baseline_mean_abs_error = (total_n > 0) ? total_abs / static_cast<double>(total_n) : 0.0;
    {
        std::vector<double> r;
        for (const auto& c : out.reflex_cells) r.push_back(c.rms);
        out.reflex_rms_median = metrics::median(r);
    }

    // Learning grid.
    const int n_cells = static_cast<int>(cfg.etas.size() * cfg.seeds.size());
    out.cells.resize(static_cast<std::size_t>(n_cells));
#pragma omp parallel for schedule(dynamic) if (cfg.parallel_cells)
    for (int idx = 0; idx < n_cells; ++idx) {
        const std::size_t ei = static_cast<std::size_t>(idx) / cfg.seeds.size();
        const std::size_t si = static_cast<std::size_t>(idx) % cfg.seeds.size();
        TrialConfig tc = cell_config(cfg, cfg.etas[ei], cfg.seeds[si], false);
        tc.baseline = out.baseline_mean_abs_error;
        const TrialStats stats = run_trial_stats(tc);
        SweepCell cell;
        cell.eta = cfg.etas[ei];
        cell.seed = cfg.seeds[si];
        cell.rms = stats.rms_error;
        cell.success_step = stats.success_step;
        cell.status = stats.status;
        out.cells[static_cast<std::size_t>(idx)] = cell;
    }

    for (std::size_t ei = 0; ei < cfg.etas.size(); ++ei) {
        EtaSummary es;
        es.eta = cfg.etas[ei];
        std::vector<double> rms, success;
        for (std::size_t si = 0; si < cfg.seeds.size(); ++si) {
            const auto& cell = out.cells[ei * cfg.seeds.size() + si];
            rms.push_back(cell.rms);
            if (cell.success_step)
                success.push_back(static_cast<double>(*cell.success_step));
            else {
                success.push_back(static_cast<double>(cfg.n_steps) + 1.0);
                ++es.n_censored;
            }
        }
        es.rms_median = metrics::median(rms);
        es.rms_q1 = metrics::quantile(rms, 0.25);
        es.rms_q3 = metrics::quantile(rms, 0.75);
        es.success_median = metrics::median(success);
        out.per_eta.push_back(es);
    }
    return out;
}

std::string sweep_summary_to_json(const SweepSummary& s) {
    json j;
    j["preset"] = s.config.preset;
    j["steps"] = s.config.n_steps;
    j["reflex_steps"] = s.config.reflex_steps;
    j["baseline_mean_abs_error"] = s.baseline_mean_abs_error;
    j["reflex_rms_median"] = s.reflex_rms_median;
    auto cell_to_json = [](const SweepCell& c) {
        json cj;
        cj["eta"] = c.eta;
        cj["seed"] = c.seed;
        cj["rms"] = c.rms;
        if (c.success_step)
            cj["success_step"] = *c.success_step;
        else
            cj["success_step"] = nullptr;
        cj["status"] = to_string(c.status);
        return cj;
    };
    j["reflex_cells"] = json::array();
    for (const auto& c : s.reflex_cells) j["reflex_cells"].push_back(cell_to_json(c));
    j["cells"] = json::array();
    for (const auto& c : s.cells) j["cells"].push_back(cell_to_json(c));
    j["per_eta"] = json::array();
    for (const auto& es : s.per_eta) {
        json ej;
        ej["eta"] = es.eta;
        ej["rms_median"] = es.rms_median;
        ej["rms_q1"] = es.rms_q1;
        ej["rms_q3"] = es.rms_q3;
        ej["success_median"] = es.success_median;
        ej["n_censored"] = es.n_censored;
        j["per_eta"].push_back(ej);
    }
    return j.dump(2);
}

}  // namespace idl
