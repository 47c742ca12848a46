#include "idl/lowpass.hpp"

#include <cmath>
#include <stdexcept>

namespace idl {

namespace {

struct Biquad {
    double b1, a1, a2;
};

// Discrete poles of the impulse-invariant map of the second-order prototype,
// DC gain normalised to one.
Biquad design(double w_n, double q) {
    const double sigma = w_n / (2.0 * q);
    const double w_d = w_n * std::sqrt(1.0 - 1.0 / (4.0 * q * q));
    const double r = std::exp(-sigma);
    const double a1 = -2.0 * r * std::cos(w_d);
    const double a2 = r * r;
    return {1.0 + a1 + a2, a1, a2};
}

std::size_t impulse_argmax(const Biquad& bq, std::size_t n_samples) {
    double s0 = 0.0, s1 = 0.0;
    double best = -1.0;
    std::size_t best_k = 0;
    for (std::size_t k = 0; k < n_samples; ++k) {
        const double x = (k == 0) ? 1.0 : 0.0;
        const double y = s0;
        s0 = bq.b1 * x - bq.a1 * y + s1;
        s1 = -bq.a2 * y;
        if (y > best) {
            best = y;
            best_k = k;
        }
    }
    return best_k;
}

}  // namespace

LowpassFilter::LowpassFilter(int peak_step, double damping)
    : peak_step_(peak_step), damping_(damping) {
    if (peak_step < 2)
        throw std::invalid_argument("LowpassFilter: peak_step must be >= 2");
    if (!(damping > 0.5))
        throw std::invalid_argument("LowpassFilter: damping must exceed 0.5");

    // The sampled argmax is a non-increasing step function of w_n; bisect
    // until it lands on the requested step.
    const std::size_t horizon = static_cast<std::size_t>(peak_step) * 20 + 50;
    double lo = 1e-4, hi = 2.0;
    Biquad bq = design(hi, damping);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        bq = design(mid, damping);
        const std::size_t am = impulse_argmax(bq, horizon);
        if (am == static_cast<std::size_t>(peak_step)) break;
        if (am > static_cast<std::size_t>(peak_step))
            lo = mid;
        else
            hi = mid;
    }
    b1_ = bq.b1;
    a1_ = bq.a1;
    a2_ = bq.a2;
}

double LowpassFilter::step(double x) {
    const double y = s0_;
    s0_ = b1_ * x - a1_ * y + s1_;
    s1_ = -a2_ * y;
    return y;
}

void LowpassFilter::reset() { s0_ = s1_ = 0.0; }

std::vector<double> LowpassFilter::impulse_response(std::size_t n) const {
    LowpassFilter fresh = *this;
    fresh.reset();
    std::vector<double> h(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) h[k] = fresh.step(k == 0 ? 1.0 : 0.0);
    return h;
}

std::vector<int> tap_peak_steps(int lo, int hi, int n) {
    if (n < 1) throw std::invalid_argument("tap_peak_steps: need at least one tap");
    if (hi < lo) throw std::invalid_argument("tap_peak_steps: hi < lo");
    std::vector<int> peaks(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t) {
        const double x = (n == 1) ? lo : lo + (hi - lo) * static_cast<double>(t) / (n - 1);
        int p = static_cast<int>(std::lround(x));
        if (t > 0 && p <= peaks[static_cast<std::size_t>(t) - 1])
            p = peaks[static_cast<std::size_t>(t) - 1] + 1;
        peaks[static_cast<std::size_t>(t)] = p;
    }
    return peaks;
}

}  // namespace idl
