#include "idl/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace idl::metrics {

double rms(std::span<const double> series) {
    if (series.empty()) throw std::invalid_argument("rms: empty series");
    double acc = 0.0;
    for (double v : series) acc += v * v;
    return std::sqrt(acc / static_cast<double>(series.size()));
}

std::optional<int> success_step(std::span<const double> series, double baseline, int window,
                                double fraction) {
    if (baseline <= 0.0) throw std::invalid_argument("success_step: baseline must be positive");
    SuccessTracker tracker(baseline, window, fraction);
    for (double v : series) tracker.push(v);
    return tracker.result();
}

SuccessTracker::SuccessTracker(double baseline, int window, double fraction)
    : threshold_sum_(fraction * baseline * window), window_(window) {
    if (baseline <= 0.0) throw std::invalid_argument("SuccessTracker: baseline must be positive");
    if (window < 1) throw std::invalid_argument("SuccessTracker: window must be positive");
    ring_.assign(static_cast<std::size_t>(window), 0.0);
}

void SuccessTracker::push(double e_c) {
    if (hit_) return;
    const double a = std::abs(e_c);
    const std::size_t slot = static_cast<std::size_t>(count_ % window_);
    sum_ += a - ring_[slot];
    ring_[slot] = a;
    ++count_;
    if (count_ % window_ == 0) {
        // refresh the running sum so drift stays bounded by one window
        sum_ = 0.0;
        for (double v : ring_) sum_ += v;
    }
    if (count_ >= window_ && sum_ <= threshold_sum_) hit_ = count_;
}

double median(std::vector<double> values) { return quantile(std::move(values), 0.5); }

double quantile(std::vector<double> values, double p) {
    if (values.empty()) throw std::invalid_argument("quantile: empty sample");
    std::sort(values.begin(), values.end());
    const double pos = p * (static_cast<double>(values.size()) - 1.0);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
}

}  // namespace idl::metrics
