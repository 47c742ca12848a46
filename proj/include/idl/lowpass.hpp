#pragma once

#include <vector>

#include "idl/transfer_function.hpp"

namespace idl {

/// Second-order unity-DC-gain low pass whose impulse response peaks at a
/// requested step count. Synthesised from the continuous prototype
/// w_n^2 / (s^2 + (w_n/Q)s + w_n^2) via impulse invariance at unit sample
/// time; w_n is found by bisection so the sampled impulse response peaks
/// exactly at peak_step.
class LowpassFilter {
public:
    LowpassFilter(int peak_step, double damping);

    double step(double x);
    void reset();

    int peak_step() const { return peak_step_; }
    double damping() const { return damping_; }

    // Realised biquad: num = [0, b1], den = [1, a1, a2].
    double b1() const { return b1_; }
    double a1() const { return a1_; }
    double a2() const { return a2_; }
    TransferFunction tf() const { return TransferFunction({0.0, b1_}, {1.0, a1_, a2_}); }

    std::vector<double> impulse_response(std::size_t n) const;

private:
    int peak_step_;
    double damping_;
    double b1_ = 0.0, a1_ = 0.0, a2_ = 0.0;
    double s0_ = 0.0, s1_ = 0.0;
};

/// Tap peak placements: n values over [lo, hi], rounded to integers,
/// duplicates collapsed upward so the sequence is strictly increasing.
std::vector<int> tap_peak_steps(int lo, int hi, int n);

}  // namespace idl
