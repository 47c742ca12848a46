#include "idl/config.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace idl {

using nlohmann::json;

TrialConfig make_preset(const std::string& name) {
    TrialConfig cfg;
    cfg.preset = name;
    cfg.world.track.waypoints = Track::default_waypoints();
    cfg.world.track.width = 2.0;
    cfg.world.track.closed = true;

    if (name == "sim16") {
        cfg.world.robot.sensors.rows = 1;
        cfg.world.robot.sensors.sensors_per_row = 16;
        cfg.filter.peak_min = 3;
        cfg.filter.peak_max = 10;
        cfg.network.layer_sizes = {40, 12, 6, 1};
        cfg.network.output_gains = {1.0};
    } else if (name == "cam6x16") {
        cfg.world.robot.sensors.rows = 6;
        cfg.world.robot.sensors.sensors_per_row = 16;
        cfg.filter.peak_min = 5;
        cfg.filter.peak_max = 10;
        cfg.network.layer_sizes = {240, 11, 11, 11, 11, 11, 11, 11, 11, 11, 11, 11, 3};
        cfg.network.output_gains = {0.25, 0.5, 1.0};
    } else {
        throw ConfigError("unknown preset: " + name);
    }
    return cfg;
}

namespace {

TransferFunction tf_from_json(const json& j) {
    return TransferFunction(j.at("num").get<std::vector<double>>(),
                            j.at("den").get<std::vector<double>>());
}

std::vector<Vec2> waypoints_from_json(const json& j) {
    std::vector<Vec2> wp;
    for (const auto& p : j) wp.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    return wp;
}

}  // namespace

void apply_overrides_json(TrialConfig& cfg, const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config JSON parse error: ") + e.what());
    }
    try {
        if (j.contains("eta")) cfg.eta = j["eta"].get<double>();
        if (j.contains("seed")) cfg.seed = j["seed"].get<unsigned>();
        if (j.contains("steps")) cfg.n_steps = j["steps"].get<int>();
        if (j.contains("reflex_only")) cfg.reflex_only = j["reflex_only"].get<bool>();
        if (j.contains("baseline")) cfg.baseline = j["baseline"].get<double>();
        if (j.contains("error_gain_sign")) cfg.error_gain_sign = j["error_gain_sign"].get<double>();
        if (j.contains("dt")) cfg.world.dt = j["dt"].get<double>();
        if (j.contains("off_track_limit"))
            cfg.world.off_track_limit = j["off_track_limit"].get<int>();
        if (j.contains("t_r")) cfg.t_r = tf_from_json(j["t_r"]);
        if (j.contains("learn_error_levels"))
            cfg.learn_error_levels = j["learn_error_levels"].get<int>();

        if (j.contains("filter")) {
            const auto& f = j["filter"];
            if (f.contains("n_taps")) cfg.filter.n_taps = f["n_taps"].get<int>();
            if (f.contains("peak_min")) cfg.filter.peak_min = f["peak_min"].get<int>();
            if (f.contains("peak_max")) cfg.filter.peak_max = f["peak_max"].get<int>();
            if (f.contains("damping")) cfg.filter.damping = f["damping"].get<double>();
        }
        if (j.contains("steering")) {
            const auto& s = j["steering"];
            if (s.contains("v0")) cfg.world.steering.v0 = s["v0"].get<double>();
            if (s.contains("alpha")) cfg.world.steering.alpha = s["alpha"].get<double>();
            if (s.contains("beta")) cfg.world.steering.beta = s["beta"].get<double>();
        }
        if (j.contains("network")) {
            const auto& n = j["network"];
            if (n.contains("hidden")) {
                const auto hidden = n["hidden"].get<std::vector<int>>();
                std::vector<int> sizes;
                sizes.push_back(cfg.network.layer_sizes.front());
                for (int hsz : hidden) sizes.push_back(hsz);
                sizes.push_back(cfg.network.layer_sizes.back());
                cfg.network.layer_sizes = sizes;
            }
            if (n.contains("outputs")) cfg.network.layer_sizes.back() = n["outputs"].get<int>();
            if (n.contains("output_gains"))
                cfg.network.output_gains = n["output_gains"].get<std::vector<double>>();
            if (n.contains("init_scale")) cfg.network.init_scale = n["init_scale"].get<double>();
            if (n.contains("input_scale")) cfg.network.input_scale = n["input_scale"].get<double>();
            if (n.contains("activation"))
                cfg.network.tanh_activation = n["activation"].get<std::string>() == "tanh";
        }
        if (j.contains("robot")) {
            const auto& r = j["robot"];
            if (r.contains("wheelbase")) cfg.world.robot.wheelbase = r["wheelbase"].get<double>();
            auto& s = cfg.world.robot.sensors;
            if (r.contains("ground_forward")) s.ground_forward = r["ground_forward"].get<double>();
            if (r.contains("ground_lateral")) s.ground_lateral = r["ground_lateral"].get<double>();
            if (r.contains("lookahead")) s.lookahead = r["lookahead"].get<double>();
            if (r.contains("row_spacing")) s.row_spacing = r["row_spacing"].get<double>();
            if (r.contains("sensors_per_row")) s.sensors_per_row = r["sensors_per_row"].get<int>();
            if (r.contains("rows")) s.rows = r["rows"].get<int>();
            if (r.contains("array_width")) s.array_width = r["array_width"].get<double>();
            if (r.contains("array_levels")) s.array_levels = r["array_levels"].get<int>();
            if (r.contains("array_levels")) s.array_levels = r["array_levels"].get<int>();
        }
        if (j.contains("track")) {
            const auto& t = j["track"];
            if (t.contains("waypoints"))
                cfg.world.track.waypoints = waypoints_from_json(t["waypoints"]);
            if (t.contains("width")) cfg.world.track.width = t["width"].get<double>();
            if (t.contains("closed")) cfg.world.track.closed = t["closed"].get<bool>();
            if (t.contains("scale")) {
                const double scale = t["scale"].get<double>();
                for (Vec2& p : cfg.world.track.waypoints) {
                    p.x *= scale;
                    p.y *= scale;
                }
            }
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config JSON: ") + e.what());
    }

    // The predictor count pins the network input width.
    const int inputs = cfg.n_predictors() * cfg.filter.n_taps;
    cfg.network.layer_sizes.front() = inputs;
}

TrialConfig load_trial_config(const std::string& preset,
                              const std::optional<std::string>& overrides_path) {
    TrialConfig cfg = make_preset(preset);
    if (overrides_path) {
        std::ifstream in(*overrides_path);
        if (!in) throw ConfigError("cannot open config file: " + *overrides_path);
        std::stringstream ss;
        ss << in.rdbuf();
        apply_overrides_json(cfg, ss.str());
    }
    return cfg;
}

std::string config_to_json(const TrialConfig& cfg) {
    json j;
    j["preset"] = cfg.preset;
    j["eta"] = cfg.eta;
    j["seed"] = cfg.seed;
    j["steps"] = cfg.n_steps;
    j["reflex_only"] = cfg.reflex_only;
    if (cfg.baseline) j["baseline"] = *cfg.baseline;
    j["error_gain_sign"] = cfg.error_gain_sign;
    j["learn_error_levels"] = cfg.learn_error_levels;
    j["t_r"] = {{"num", cfg.t_r.num()}, {"den", cfg.t_r.den()}};
    j["filter"] = {{"n_taps", cfg.filter.n_taps},
                   {"peak_min", cfg.filter.peak_min},
                   {"peak_max", cfg.filter.peak_max},
                   {"damping", cfg.filter.damping}};
    j["steering"] = {{"v0", cfg.world.steering.v0},
                     {"alpha", cfg.world.steering.alpha},
                     {"beta", cfg.world.steering.beta}};
    j["network"] = {{"layer_sizes", cfg.network.layer_sizes},
                    {"output_gains", cfg.network.output_gains},
                    {"init_scale", cfg.network.init_scale},
                    {"input_scale", cfg.network.input_scale},
                    {"activation", cfg.network.tanh_activation ? "tanh" : "linear"}};
    const auto& s = cfg.world.robot.sensors;
    j["robot"] = {{"wheelbase", cfg.world.robot.wheelbase},
                  {"ground_forward", s.ground_forward},
                  {"ground_lateral", s.ground_lateral},
                  {"lookahead", s.lookahead},
                  {"row_spacing", s.row_spacing},
                  {"sensors_per_row", s.sensors_per_row},
                  {"rows", s.rows},
                  {"array_width", s.array_width},

                  {"array_levels", s.array_levels}};
    j["dt"] = cfg.world.dt;
    j["off_track_limit"] = cfg.world.off_track_limit;
    j["track"] = {{"width", cfg.world.track.width},
                  {"closed", cfg.world.track.closed},
                  {"n_waypoints", cfg.world.track.waypoints.size()}};
    return j.dump(2);
}

}  // namespace idl
