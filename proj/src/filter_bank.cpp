#include "idl/filter_bank.hpp"

#include <stdexcept>

namespace idl {

FilterBank::FilterBank(int n_predictors, const FilterBankConfig& cfg, ExecMode mode)
    : n_predictors_(n_predictors), n_taps_(cfg.n_taps), mode_(mode) {
    if (n_predictors < 1)
        throw std::invalid_argument("FilterBank: need at least one predictor");
    peak_steps_ = tap_peak_steps(cfg.peak_min, cfg.peak_max, cfg.n_taps);

    std::vector<LowpassFilter> prototypes;
    prototypes.reserve(peak_steps_.size());
    for (int p : peak_steps_) prototypes.emplace_back(p, cfg.damping);

    const std::size_t n = static_cast<std::size_t>(n_predictors_) * peak_steps_.size();
    b1_.resize(n);
    a1_.resize(n);
    a2_.resize(n);
    s0_.assign(n, 0.0);
    s1_.assign(n, 0.0);
    scratch_.assign(n, 0.0);
    for (int i = 0; i < n_predictors_; ++i) {
        for (int t = 0; t < n_taps_; ++t) {
            const std::size_t f = static_cast<std::size_t>(i) * n_taps_ + t;
            b1_[f] = prototypes[static_cast<std::size_t>(t)].b1();
            a1_[f] = prototypes[static_cast<std::size_t>(t)].a1();
            a2_[f] = prototypes[static_cast<std::size_t>(t)].a2();
        }
    }
}

std::vector<double> FilterBank::step(std::span<const double> p) {
    std::vector<double> u(size());
    step(p, u);
    return u;
}

void FilterBank::step(std::span<const double> p, std::span<double> u) {
    if (p.size() != static_cast<std::size_t>(n_predictors_))
        throw std::invalid_argument("FilterBank::step: predictor vector has wrong size");
    if (u.size() != size())
        throw std::invalid_argument("FilterBank::step: output vector has wrong size");
    for (int i = 0; i < n_predictors_; ++i)
        for (int t = 0; t < n_taps_; ++t)
            scratch_[static_cast<std::size_t>(i) * n_taps_ + t] = p[static_cast<std::size_t>(i)];
    kernels::biquad_bank_step(mode_, size(), b1_.data(), a1_.data(), a2_.data(),
                              s0_.data(), s1_.data(), scratch_.data(), u.data());
}

void FilterBank::reset() {
    std::fill(s0_.begin(), s0_.end(), 0.0);
    std::fill(s1_.begin(), s1_.end(), 0.0);
}

}  // namespace idl
