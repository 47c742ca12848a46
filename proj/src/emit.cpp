#include "idl/emit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "idl/config.hpp"

namespace idl {

namespace {

std::ofstream open_out(const std::string& path, std::ios::openmode mode = std::ios::out) {
    std::ofstream out(path, mode);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

// Fixed shortest-roundtrip formatting keeps identical runs byte-identical.
std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

void write_pgm(const std::vector<std::vector<double>>& matrix, const std::string& path) {
    if (matrix.empty() || matrix[0].empty())
        throw std::invalid_argument("write_pgm: empty matrix");
    const std::size_t rows = matrix.size(), cols = matrix[0].size();
    auto out = open_out(path, std::ios::binary);
    out << "P5\n" << cols << " " << rows << "\n255\n";
    for (const auto& row : matrix) {
        if (row.size() != cols) throw std::invalid_argument("write_pgm: ragged matrix");
        for (double v : row) {
            const double c = std::clamp(v, 0.0, 1.0);
            out.put(static_cast<char>(static_cast<unsigned char>(std::lround(c * 255.0))));
        }
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

void emit_trial(const TrialLog& log, const std::string& outdir) {
    if (log.steps.empty())
        throw std::invalid_argument("emit_trial: refusing to emit a zero-step trial");
    std::filesystem::create_directories(outdir);
    const std::filesystem::path dir(outdir);

    {
        auto out = open_out((dir / "trial.csv").string());
        out << "k,e_c,a_p,v_left,v_right,x,y,heading,on_track\n";
        for (const auto& s : log.steps) {
            out << s.k << ',' << fmt(s.e_c) << ',' << fmt(s.a_p) << ',' << fmt(s.v_left) << ','
                << fmt(s.v_right) << ',' << fmt(s.pose.x) << ',' << fmt(s.pose.y) << ','
                << fmt(s.pose.heading) << ',' << (s.on_track ? 1 : 0) << '\n';
        }
        if (!out) throw std::runtime_error("write failed: " + (dir / "trial.csv").string());
    }

    {
        auto out = open_out((dir / "weight_distance.csv").string());
        out << "k";
        for (std::size_t l = 0; l < log.weight_distances.size(); ++l) out << ",d_" << l;
        out << "\n";
        std::vector<double> peak(log.weight_distances.size(), 0.0);
        for (std::size_t l = 0; l < log.weight_distances.size(); ++l)
            for (double v : log.weight_distances[l]) peak[l] = std::max(peak[l], v);
        for (std::size_t k = 0; k < log.steps.size(); ++k) {
            out << log.steps[k].k;
            for (std::size_t l = 0; l < log.weight_distances.size(); ++l) {
                const double v = log.weight_distances[l][k];
                out << ',' << fmt(peak[l] > 0.0 ? v / peak[l] : 0.0);
            }
            out << '\n';
        }
        if (!out)
            throw std::runtime_error("write failed: " + (dir / "weight_distance.csv").string());
    }

    write_pgm(log.final_weight_map, (dir / "weights_layer0.pgm").string());

    {
        nlohmann::json j;
        j["rms"] = log.rms_error;
        if (log.success_step)
            j["success_step"] = *log.success_step;
        else
            j["success_step"] = nullptr;
        j["status"] = to_string(log.status);
        j["steps_run"] = log.steps_run;
        if (!log.diagnostics.empty()) j["diagnostics"] = log.diagnostics;
        j["config"] = nlohmann::json::parse(config_to_json(log.config));
        auto out = open_out((dir / "summary.json").string());
        out << j.dump(2) << "\n";
        if (!out) throw std::runtime_error("write failed: " + (dir / "summary.json").string());
    }
}

void emit_sweep(const SweepSummary& summary, const std::string& outdir) {
    std::filesystem::create_directories(outdir);
    const std::filesystem::path dir(outdir);
    {
        auto out = open_out((dir / "summary.json").string());
        out << sweep_summary_to_json(summary) << "\n";
    }
    {
        auto out = open_out((dir / "cells.csv").string());
        out << "eta,seed,rms,success_step,status\n";
        auto line = [&](const SweepCell& c) {
            out << fmt(c.eta) << ',' << c.seed << ',' << fmt(c.rms) << ',';
            if (c.success_step)
                out << *c.success_step;
            else
                out << "NA";
            out << ',' << to_string(c.status) << '\n';
        };
        for (const auto& c : summary.reflex_cells) line(c);
        for (const auto& c : summary.cells) line(c);
        if (!out) throw std::runtime_error("write failed: " + (dir / "cells.csv").string());
    }
}

}  // namespace idl
