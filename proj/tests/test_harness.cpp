#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "idl/config.hpp"
#include "idl/emit.hpp"
#include "idl/metrics.hpp"
#include "idl/sweep.hpp"
#include "idl/trial.hpp"
#include "test_oracles.hpp"

using namespace idl;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Exhaustive window scan, the slow way.
std::optional<int> success_brute(const std::vector<double>& e, double baseline, int window = 100,
                                 double fraction = 0.25) {
    for (std::size_t k = static_cast<std::size_t>(window); k <= e.size(); ++k) {
        double acc = 0.0;
        for (std::size_t i = k - static_cast<std::size_t>(window); i < k; ++i)
            acc += std::abs(e[i]);
        if (acc / window <= fraction * baseline) return static_cast<int>(k);
    }
    return std::nullopt;
}

}  // namespace

TEST_CASE("rms basics") {
    CHECK(metrics::rms(std::vector<double>{0, 0, 0}) == 0.0);
    CHECK(metrics::rms(std::vector<double>{3, 4}) ==
          doctest::Approx(std::sqrt(12.5)).epsilon(1e-12));
    CHECK_THROWS_AS(metrics::rms(std::vector<double>{}), std::invalid_argument);

    std::mt19937 rng(1);
    const auto series = oracle::random_sequence(rng, 777, 2.0);
    double sum_sq = 0.0;
    for (double v : series) sum_sq += v * v;
    const double r = metrics::rms(series);
    CHECK(r * r * static_cast<double>(series.size()) ==
          doctest::Approx(sum_sq).epsilon(1e-12));
}

TEST_CASE("success step: zero series succeeds as soon as the window fills") {
    const std::vector<double> zero(300, 0.0);
    const auto hit = metrics::success_step(zero, 0.5);
    REQUIRE(hit.has_value());
    CHECK(*hit == 100);
}

TEST_CASE("success step: no reduction means no success") {
    const std::vector<double> flat(500, 0.8);
    CHECK_FALSE(metrics::success_step(flat, 0.8).has_value());
}

TEST_CASE("success step: exponential decay matches the exhaustive scan") {
    std::vector<double> e;
    for (int k = 0; k < 1200; ++k) e.push_back(0.9 * std::exp(-k / 180.0));
    const double baseline = 0.5;
    const auto got = metrics::success_step(e, baseline);
    const auto want = success_brute(e, baseline);
    REQUIRE(want.has_value());
    REQUIRE(got.has_value());
    CHECK(*got == *want);
}

TEST_CASE("success step: random series agree with the exhaustive scan") {
    std::mt19937 rng(5);
    for (int rep = 0; rep < 25; ++rep) {
        std::vector<double> e;
        double level = 1.0;
        for (int k = 0; k < 600; ++k) {
            level *= oracle::uniform(rng, 0.97, 1.005);
            e.push_back(level * oracle::uniform(rng, -1.0, 1.0));
        }
        const double baseline = 0.4;
        const auto got = metrics::success_step(e, baseline);
        const auto want = success_brute(e, baseline);
        CHECK(got == want);
    }
}

TEST_CASE("quantiles interpolate") {
    std::vector<double> v{4.0, 1.0, 3.0, 2.0};
    CHECK(metrics::median(v) == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(metrics::quantile(v, 0.0) == 1.0);
    CHECK(metrics::quantile(v, 1.0) == 4.0);
}

TEST_CASE("presets assemble consistently") {
    const TrialConfig sim = make_preset("sim16");
    CHECK(sim.n_predictors() == 8);
    CHECK(sim.network.layer_sizes.front() == 40);
    CHECK(sim.network.layer_sizes == std::vector<int>{40, 12, 6, 1});

    const TrialConfig cam = make_preset("cam6x16");
    CHECK(cam.n_predictors() == 48);
    CHECK(cam.network.layer_sizes.front() == 240);
    CHECK(cam.network.layer_sizes.size() == 13);  // input + 11 hidden + output
    CHECK(cam.network.layer_sizes.back() == 3);
    CHECK(cam.network.output_gains == std::vector<double>{0.25, 0.5, 1.0});

    CHECK_THROWS_AS(make_preset("nope"), ConfigError);
}

TEST_CASE("JSON overrides reshape the configuration") {
    TrialConfig cfg = make_preset("sim16");
    apply_overrides_json(cfg, R"({
        "eta": 0.5, "seed": 9, "steps": 123, "reflex_only": true,
        "filter": {"n_taps": 3, "peak_min": 4, "peak_max": 9},
        "steering": {"v0": 10, "alpha": 50, "beta": 20},
        "network": {"hidden": [5, 5]},
        "robot": {"sensors_per_row": 8},
        "t_r": {"num": [0.5], "den": [1.0]},
        "error_gain_sign": -1
    })");
    CHECK(cfg.eta == 0.5);
    CHECK(cfg.seed == 9);
    CHECK(cfg.n_steps == 123);
    CHECK(cfg.reflex_only);
    CHECK(cfg.filter.n_taps == 3);
    CHECK(cfg.world.steering.v0 == 10.0);
    CHECK(cfg.n_predictors() == 4);
    // input width follows predictors x taps
    CHECK(cfg.network.layer_sizes == std::vector<int>{12, 5, 5, 1});
    CHECK(cfg.error_gain_sign == -1.0);
    CHECK(cfg.t_r.num() == std::vector<double>{0.5});

    CHECK_THROWS_AS(apply_overrides_json(cfg, "{not json"), ConfigError);
    CHECK_THROWS_AS(apply_overrides_json(cfg, R"({"eta": "fast"})"), ConfigError);
}

TEST_CASE("track waypoints load from JSON") {
    TrialConfig cfg = make_preset("sim16");
    apply_overrides_json(cfg, R"({"track": {"waypoints": [[0,0],[10,0],[10,10],[0,10]],
                                             "width": 1.5, "closed": true}})");
    CHECK(cfg.world.track.waypoints.size() == 4);
    CHECK(cfg.world.track.width == 1.5);
}

TEST_CASE("emitted artifacts round-trip the summary rms") {
    TrialConfig cfg = make_preset("sim16");
    cfg.eta = 1e-2;
    cfg.n_steps = 1000;
    cfg.baseline = 0.05;
    const TrialLog log = run_trial(cfg);

    const auto dir = std::filesystem::temp_directory_path() / "idl_emit_test";
    std::filesystem::remove_all(dir);
    emit_trial(log, dir.string());

    // row count = steps + header
    const std::string csv = slurp(dir / "trial.csv");
    std::size_t lines = 0;
    for (char c : csv)
        if (c == '\n') ++lines;
    CHECK(lines == static_cast<std::size_t>(log.steps_run) + 1);

    // recompute rms from the csv, compare with summary.json
    std::istringstream rows(csv);
    std::string line;
    std::getline(rows, line);  // header
    std::vector<double> e;
    while (std::getline(rows, line)) {
        const auto first = line.find(',');
        const auto second = line.find(',', first + 1);
        e.push_back(std::stod(line.substr(first + 1, second - first - 1)));
    }
    const double recomputed = metrics::rms(e);
    const std::string summary = slurp(dir / "summary.json");
    const auto pos = summary.find("\"rms\":");
    REQUIRE(pos != std::string::npos);
    const double reported = std::stod(summary.substr(pos + 6));
    CHECK(recomputed == doctest::Approx(reported).epsilon(1e-9));

    // weight distance series: normalised, non-negative, peaks at one
    const std::string wd = slurp(dir / "weight_distance.csv");
    std::istringstream wd_rows(wd);
    std::getline(wd_rows, line);
    std::vector<double> peak;
    std::vector<double> last;
    while (std::getline(wd_rows, line)) {
        std::istringstream cells(line);
        std::string cell;
        std::getline(cells, cell, ',');
        std::size_t col = 0;
        while (std::getline(cells, cell, ',')) {
            const double v = std::stod(cell);
            CHECK(v >= 0.0);
            CHECK(v <= 1.0 + 1e-12);
            if (col >= peak.size()) {
                peak.resize(col + 1, 0.0);
                last.resize(col + 1, 0.0);
            }
            peak[col] = std::max(peak[col], v);
            last[col] = v;
            ++col;
        }
    }
    for (double p : peak) CHECK(p == doctest::Approx(1.0).epsilon(1e-12));
    // the learning settles, so at least one layer ends at its peak
    bool one_ends_at_peak = false;
    for (double v : last) one_ends_at_peak |= v >= 0.95;
    CHECK(one_ends_at_peak);

    // PGM header
    const std::string pgm = slurp(dir / "weights_layer0.pgm");
    CHECK(pgm.substr(0, 3) == "P5\n");
    CHECK(pgm.find("12 40") != std::string::npos);

    std::filesystem::remove_all(dir);
}

TEST_CASE("invalid trial parameters are rejected up front") {
    TrialConfig cfg = make_preset("sim16");
    cfg.eta = -1.0;
    CHECK_THROWS_AS(run_trial(cfg), ConfigError);
    cfg.eta = 1e-2;
    cfg.n_steps = 0;
    CHECK_THROWS_AS(run_trial(cfg), ConfigError);
}

TEST_CASE("trial log rms is recomputable from its own step series") {
    TrialConfig cfg = make_preset("sim16");
    cfg.eta = 1e-3;
    cfg.n_steps = 400;
    const TrialLog log = run_trial(cfg);
    std::vector<double> e;
    for (const auto& s : log.steps) e.push_back(s.e_c);
    CHECK(log.rms_error == doctest::Approx(metrics::rms(e)).epsilon(1e-12));
}

TEST_CASE("zero-step logs are rejected before emission") {
    TrialLog empty;
    CHECK_THROWS_AS(emit_trial(empty, "/tmp/idl_should_not_exist"), std::invalid_argument);
}

TEST_CASE("identical configs emit byte-identical trial.csv") {
    TrialConfig cfg = make_preset("sim16");
    cfg.eta = 1e-2;
    cfg.seed = 4;
    cfg.n_steps = 250;
    const auto dir_a = std::filesystem::temp_directory_path() / "idl_det_a";
    const auto dir_b = std::filesystem::temp_directory_path() / "idl_det_b";
    std::filesystem::remove_all(dir_a);
    std::filesystem::remove_all(dir_b);
    emit_trial(run_trial(cfg), dir_a.string());
    emit_trial(run_trial(cfg), dir_b.string());
    CHECK(slurp(dir_a / "trial.csv") == slurp(dir_b / "trial.csv"));
    std::filesystem::remove_all(dir_a);
    std::filesystem::remove_all(dir_b);
}

TEST_CASE("sweep covers every cell exactly once and never drops aborts") {
    SweepConfig cfg;
    cfg.preset = "sim16";
    cfg.etas = {1e-3, 1e-2};
    cfg.seeds = {0, 1, 2};
    cfg.reflex_seeds = {0, 1};
    cfg.n_steps = 220;
    cfg.reflex_steps = 220;
    const SweepSummary s = run_sweep(cfg);

    REQUIRE(s.cells.size() == 6);
    REQUIRE(s.reflex_cells.size() == 2);
    for (std::size_t ei = 0; ei < cfg.etas.size(); ++ei)
        for (std::size_t si = 0; si < cfg.seeds.size(); ++si) {
            const auto& cell = s.cells[ei * cfg.seeds.size() + si];
            CHECK(cell.eta == cfg.etas[ei]);
            CHECK(cell.seed == cfg.seeds[si]);
        }
    CHECK(s.baseline_mean_abs_error > 0.0);

    // reflex cells never report a success step (they are the baseline)
    for (const auto& c : s.reflex_cells) CHECK_FALSE(c.success_step.has_value());

    // deterministic regardless of cell scheduling
    SweepConfig serial_cfg = cfg;
    serial_cfg.parallel_cells = false;
    const SweepSummary t = run_sweep(serial_cfg);
    for (std::size_t i = 0; i < s.cells.size(); ++i) {
        CHECK(s.cells[i].rms == t.cells[i].rms);
        CHECK(s.cells[i].success_step == t.cells[i].success_step);
    }
}

TEST_CASE("aborted sweep cells keep their status instead of vanishing") {
    SweepConfig cfg;
    cfg.preset = "sim16";
    cfg.etas = {1e9};  // blows up within a few steps
    cfg.seeds = {0, 1};
    cfg.reflex_seeds = {0};
    cfg.n_steps = 2000;
    cfg.reflex_steps = 200;
    const SweepSummary s = run_sweep(cfg);
    REQUIRE(s.cells.size() == 2);
    for (const auto& c : s.cells) CHECK(c.status != TrialStatus::ok);
}

TEST_CASE("sweep grid parses from JSON") {
    const auto cfg = sweep_config_from_json(R"({
        "preset": "sim16",
        "etas": [1e-4, 1e-2],
        "seeds": [0, 1],
        "reflex_seeds": [0],
        "steps": 500,
        "reflex_steps": 400,
        "overrides": {"steering": {"beta": 50}}
    })");
    CHECK(cfg.etas.size() == 2);
    CHECK(cfg.seeds.size() == 2);
    CHECK(cfg.n_steps == 500);
    CHECK(cfg.reflex_steps == 400);
    CHECK(!cfg.overrides_json.empty());
    CHECK_THROWS_AS(sweep_config_from_json(R"({"etas": []})"), ConfigError);
}
