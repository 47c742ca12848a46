#pragma once

#include <optional>
#include <span>
#include <vector>

namespace idl {
namespace metrics {

/// Root of the mean of squares.
double rms(std::span<const double> series);

/// First step count k (1-based, k >= window) at which the trailing
/// `window`-step mean of |series| drops to <= fraction * baseline, or
/// nothing if that never happens. Defaults match the success condition:
/// 100 steps, 75 percent reduction.
std::optional<int> success_step(std::span<const double> series, double baseline,
                                int window = 100, double fraction = 0.25);

/// Streaming form of success_step for long runs.
class SuccessTracker {
public:
    SuccessTracker(double baseline, int window = 100, double fraction = 0.25);
    void push(double e_c);
    std::optional<int> result() const { return hit_; }

private:
    double threshold_sum_;
    int window_;
    int count_ = 0;
    double sum_ = 0.0;
    std::vector<double> ring_;
    std::optional<int> hit_;
};

double median(std::vector<double> values);
/// Linearly interpolated quantile of a sorted-on-demand copy, p in [0,1].
double quantile(std::vector<double> values, double p);

}  // namespace metrics
}  // namespace idl
