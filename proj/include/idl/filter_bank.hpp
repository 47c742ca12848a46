#pragma once

#include <span>
#include <vector>

#include "idl/kernels.hpp"
#include "idl/lowpass.hpp"

namespace idl {

struct FilterBankConfig {
    int n_taps = 5;
    int peak_min = 3;
    int peak_max = 10;
    double damping = 0.51;
};

/// One independent low-pass unit per (predictor, tap) pair. Output ordering:
/// index = predictor * n_taps + tap, taps by ascending peak step.
class FilterBank {
public:
    FilterBank(int n_predictors, const FilterBankConfig& cfg,
               ExecMode mode = ExecMode::serial);

    /// Filters one predictor sample vector into the network input vector.
    std::vector<double> step(std::span<const double> p);
    void step(std::span<const double> p, std::span<double> u);

    void reset();

    int n_predictors() const { return n_predictors_; }
    int n_taps() const { return n_taps_; }
    std::size_t size() const { return b1_.size(); }
    const std::vector<int>& peak_steps() const { return peak_steps_; }

    void set_mode(ExecMode mode) { mode_ = mode; }

private:
    int n_predictors_;
    int n_taps_;
    std::vector<int> peak_steps_;
    ExecMode mode_;
    // One biquad per (predictor, tap), flattened; scratch holds the
    // tap-replicated input.
    std::vector<double> b1_, a1_, a2_, s0_, s1_, scratch_;
};

}  // namespace idl
