// Timing comparison of the serial reference kernels against the OpenMP
// variants, plus a whole-trial timing at the two preset shapes.
#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "idl/config.hpp"
#include "idl/kernels.hpp"
#include "idl/trial.hpp"

using clock_type = std::chrono::steady_clock;

namespace {

double ms_since(clock_type::time_point t0) {
    return std::chrono::duration<double, std::milli>(clock_type::now() - t0).count();
}

std::vector<double> random_vec(std::size_t n, std::mt19937& rng) {
    std::vector<double> v(n);
    for (double& x : v) x = static_cast<double>(rng()) / 4294967296.0 - 0.5;
    return v;
}

void bench_dense(std::size_t rows, std::size_t cols, int reps) {
    std::mt19937 rng(42);
    const auto w = random_vec(rows * cols, rng);
    const auto in = random_vec(rows, rng);
    const auto phi = random_vec(cols, rng);
    std::vector<double> out(cols), g(rows);
    auto wm = w;

    auto t0 = clock_type::now();
    for (int r = 0; r < reps; ++r)
        idl::kernels::dense_forward_serial(w.data(), rows, cols, in.data(), out.data());
    const double fwd_s = ms_since(t0);
    t0 = clock_type::now();
    for (int r = 0; r < reps; ++r)
        idl::kernels::dense_forward_omp(w.data(), rows, cols, in.data(), out.data());
    const double fwd_p = ms_since(t0);

    t0 = clock_type::now();
    for (int r = 0; r < reps; ++r)
        idl::kernels::dense_backward_serial(w.data(), rows, cols, phi.data(), g.data());
    const double bwd_s = ms_since(t0);
    t0 = clock_type::now();
    for (int r = 0; r < reps; ++r)
        idl::kernels::dense_backward_omp(w.data(), rows, cols, phi.data(), g.data());
    const double bwd_p = ms_since(t0);

    t0 = clock_type::now();
    for (int r = 0; r < reps; ++r)
        idl::kernels::outer_update_serial(wm.data(), rows, cols, in.data(), phi.data(), 1e-6);
    const double upd_s = ms_since(t0);
    t0 = clock_type::now();
    for (int r = 0; r < reps; ++r)
        idl::kernels::outer_update_omp(wm.data(), rows, cols, in.data(), phi.data(), 1e-6);
    const double upd_p = ms_since(t0);

    std::printf("%6zu x %-6zu fwd %8.2f /%8.2f ms  bwd %8.2f /%8.2f ms  upd %8.2f /%8.2f ms\n",
                rows, cols, fwd_s, fwd_p, bwd_s, bwd_p, upd_s, upd_p);
}

void bench_bank(int n_predictors, int reps) {
    idl::FilterBankConfig cfg;
    idl::FilterBank serial(n_predictors, cfg, idl::ExecMode::serial);
    idl::FilterBank parallel(n_predictors, cfg, idl::ExecMode::openmp);
    std::mt19937 rng(7);
    const auto p = random_vec(static_cast<std::size_t>(n_predictors), rng);
    std::vector<double> u(serial.size());

    auto t0 = clock_type::now();
    for (int r = 0; r < reps; ++r) serial.step(p, u);
    const double t_s = ms_since(t0);
    t0 = clock_type::now();
    for (int r = 0; r < reps; ++r) parallel.step(p, u);
    const double t_p = ms_since(t0);
    std::printf("bank %6d filters: %8.2f ms serial / %8.2f ms omp\n",
                n_predictors * cfg.n_taps, t_s, t_p);
}

void bench_trial(const char* preset) {
    idl::TrialConfig cfg = idl::make_preset(preset);
    cfg.n_steps = 1000;
    cfg.eta = 1e-2;
    auto t0 = clock_type::now();
    const auto serial = idl::run_trial_stats(cfg);
    const double t_s = ms_since(t0);
    cfg.mode = idl::ExecMode::openmp;
    t0 = clock_type::now();
    const auto parallel = idl::run_trial_stats(cfg);
    const double t_p = ms_since(t0);
    std::printf("trial %-8s 1000 steps: %8.2f ms serial / %8.2f ms omp (rms %.5f / %.5f)\n",
                preset, t_s, t_p, serial.rms_error, parallel.rms_error);
}

}  // namespace

int main() {
    std::printf("dense kernels (serial / omp):\n");
    bench_dense(240, 11, 20000);
    bench_dense(1024, 256, 200);
    bench_dense(4096, 1024, 20);

    std::printf("\nfilter bank step:\n");
    bench_bank(48, 20000);
    bench_bank(10000, 500);

    std::printf("\nfull trials:\n");
    bench_trial("sim16");
    bench_trial("cam6x16");
    return 0;
}
