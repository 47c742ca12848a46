// Shared test-side oracles, independent of the library's stepping and
// composition code paths.
#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "idl/transfer_function.hpp"

namespace oracle {

// Direct-form I evaluation of the difference equation
// a0 y[k] = sum_i b_i x[k-i] - sum_{i>=1} a_i y[k-i].
inline std::vector<double> filter_df1(const std::vector<double>& b, const std::vector<double>& a,
                                      const std::vector<double>& x) {
    std::vector<double> y(x.size(), 0.0);
    for (std::size_t k = 0; k < x.size(); ++k) {
        double acc = 0.0;
        for (std::size_t i = 0; i < b.size(); ++i)
            if (k >= i) acc += b[i] * x[k - i];
        for (std::size_t i = 1; i < a.size(); ++i)
            if (k >= i) acc -= a[i] * y[k - i];
        y[k] = acc / a[0];
    }
    return y;
}

inline double uniform(std::mt19937& rng, double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng()) / 4294967296.0);
}

// Random FIR block with small coefficients (always stable).
inline idl::TransferFunction random_fir(std::mt19937& rng, int max_order, double gain) {
    const int order = static_cast<int>(rng() % static_cast<unsigned>(max_order + 1));
    std::vector<double> num(static_cast<std::size_t>(order) + 1);
    for (double& c : num) c = uniform(rng, -gain, gain);
    if (num[0] == 0.0) num[0] = gain * 0.5;
    return idl::TransferFunction(num, {1.0});
}

// Random IIR block assembled from poles drawn strictly inside the unit
// circle, numerator FIR with small gain.
inline idl::TransferFunction random_stable_iir(std::mt19937& rng, int max_poles, double gain) {
    const int n_pairs = static_cast<int>(rng() % static_cast<unsigned>(max_poles / 2 + 1));
    std::vector<double> den{1.0};
    for (int i = 0; i < n_pairs; ++i) {
        const double r = uniform(rng, 0.0, 0.8);
        const double th = uniform(rng, 0.0, 3.14159265358979323846);
        // conjugate pole pair: 1 - 2 r cos(th) z^-1 + r^2 z^-2
        den = idl::poly_mul(den, {1.0, -2.0 * r * std::cos(th), r * r});
    }
    if (rng() % 2 == 0) {
        const double p = uniform(rng, -0.8, 0.8);
        den = idl::poly_mul(den, {1.0, -p});
    }
    std::vector<double> num(1 + rng() % 3);
    for (double& c : num) c = uniform(rng, -gain, gain);
    if (num[0] == 0.0) num[0] = gain * 0.3;
    return idl::TransferFunction(num, den);
}

inline std::vector<double> random_sequence(std::mt19937& rng, std::size_t n, double amp) {
    std::vector<double> s(n);
    for (double& v : s) v = uniform(rng, -amp, amp);
    return s;
}

}  // namespace oracle
