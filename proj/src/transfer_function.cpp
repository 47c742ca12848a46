#include "idl/transfer_function.hpp"

#include <algorithm>
#include <cmath>

namespace idl {

namespace {

std::vector<double> trimmed(std::vector<double> c) {
    while (c.size() > 1 && c.back() == 0.0) c.pop_back();
    return c;
}

}  // namespace

std::vector<std::complex<double>> polynomial_roots(const std::vector<double>& coeffs) {
    std::vector<double> c = trimmed(coeffs);
    const std::size_t n = c.size() - 1;  // degree
    std::vector<std::complex<double>> roots;
    if (n == 0) return roots;
    if (c[0] == 0.0) throw std::invalid_argument("polynomial_roots: leading coefficient is zero");

    // Monic coefficients of p(z) = z^n + m1 z^(n-1) + ... + mn,
    // where m_i = c_i / c_0 (c given ascending in z^-1).
    std::vector<std::complex<double>> m(n);
    for (std::size_t i = 0; i < n; ++i) m[i] = c[i + 1] / c[0];

    auto eval = [&](std::complex<double> z) {
        std::complex<double> v = 1.0;
        for (std::size_t i = 0; i < n; ++i) v = v * z + m[i];
        return v;
    };

    // Durand-Kerner iteration from a spiral of initial guesses.
    roots.resize(n);
    std::complex<double> seed(0.4, 0.9);
    std::complex<double> g = seed;
    for (std::size_t i = 0; i < n; ++i, g *= seed) roots[i] = g;

    for (int it = 0; it < 1000; ++it) {
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            std::complex<double> d = 1.0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) d *= roots[i] - roots[j];
            std::complex<double> delta = eval(roots[i]) / d;
            roots[i] -= delta;
            worst = std::max(worst, std::abs(delta));
        }
        if (worst < 1e-14) break;
    }
    return roots;
}

std::vector<double> poly_mul(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> r(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

std::vector<double> poly_add(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> r(std::max(a.size(), b.size()), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return r;
}

TransferFunction::TransferFunction() : TransferFunction({1.0}, {1.0}) {}

TransferFunction::TransferFunction(std::vector<double> num, std::vector<double> den)
    : num_(std::move(num)), den_(std::move(den)) {
    if (num_.empty() || den_.empty())
        throw std::invalid_argument("TransferFunction: empty coefficient list");
    if (den_[0] == 0.0)
        throw std::invalid_argument("TransferFunction: a0 must be nonzero");
    realize();
}

void TransferFunction::realize() {
    const std::size_t order = std::max(num_.size(), den_.size()) - 1;
    bn_.assign(order + 1, 0.0);
    an_.assign(order + 1, 0.0);
    for (std::size_t i = 0; i < num_.size(); ++i) bn_[i] = num_[i] / den_[0];
    for (std::size_t i = 0; i < den_.size(); ++i) an_[i] = den_[i] / den_[0];
    state_.assign(order, 0.0);
}

TransferFunction TransferFunction::gain(double g) { return TransferFunction({g}, {1.0}); }

TransferFunction TransferFunction::delay(int steps) {
    if (steps < 0) throw std::invalid_argument("delay: negative step count");
    std::vector<double> num(static_cast<std::size_t>(steps) + 1, 0.0);
    num.back() = 1.0;
    return TransferFunction(std::move(num), {1.0});
}

double TransferFunction::step(double x) {
    const std::size_t n = state_.size();
    const double y = bn_[0] * x + (n ? state_[0] : 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i)
        state_[i] = bn_[i + 1] * x - an_[i + 1] * y + state_[i + 1];
    if (n) state_[n - 1] = bn_[n] * x - an_[n] * y;
    return y;
}

TransferFunction::Affine TransferFunction::peek() const {
    return {state_.empty() ? 0.0 : state_[0], bn_[0]};
}

void TransferFunction::reset() { std::fill(state_.begin(), state_.end(), 0.0); }

bool TransferFunction::is_static_gain() const {
    auto n = trimmed(num_);
    auto d = trimmed(den_);
    return n.size() == 1 && d.size() == 1;
}

std::vector<std::complex<double>> TransferFunction::poles() const {
    return polynomial_roots(den_);
}

bool TransferFunction::is_stable() const {
    for (const auto& p : poles())
        if (std::abs(p) >= 1.0) return false;
    return true;
}

std::vector<double> TransferFunction::impulse_response(std::size_t n) const {
    TransferFunction fresh(num_, den_);
    std::vector<double> h(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) h[k] = fresh.step(k == 0 ? 1.0 : 0.0);
    return h;
}

std::vector<double> TransferFunction::filter(std::span<const double> x) const {
    TransferFunction fresh(num_, den_);
    std::vector<double> y(x.size(), 0.0);
    for (std::size_t k = 0; k < x.size(); ++k) y[k] = fresh.step(x[k]);
    return y;
}

TransferFunction operator*(const TransferFunction& a, const TransferFunction& b) {
    return {poly_mul(a.num_, b.num_), poly_mul(a.den_, b.den_)};
}

TransferFunction operator+(const TransferFunction& a, const TransferFunction& b) {
    return {poly_add(poly_mul(a.num_, b.den_), poly_mul(b.num_, a.den_)),
            poly_mul(a.den_, b.den_)};
}

TransferFunction operator-(const TransferFunction& a) {
    std::vector<double> n = a.num_;
    for (double& c : n) c = -c;
    return {n, a.den_};
}

TransferFunction operator/(const TransferFunction& a, const TransferFunction& b) {
    std::vector<double> den = poly_mul(a.den_, b.num_);
    std::size_t lead = 0;
    while (lead < den.size() && den[lead] == 0.0) ++lead;
    if (lead == den.size())
        throw CompositionError("transfer function division: denominator vanished");
    if (lead > 0) {
        // a0 = 0 means the quotient is non-causal by `lead` samples; shift
        // numerator and denominator together (multiply both by z^lead).
        std::vector<double> num = poly_mul(a.num_, b.den_);
        if (std::any_of(num.begin(), num.begin() + static_cast<long>(std::min(lead, num.size())),
                        [](double c) { return c != 0.0; }))
            throw CompositionError("transfer function division: non-causal quotient");
        num.erase(num.begin(), num.begin() + static_cast<long>(std::min(lead, num.size())));
        den.erase(den.begin(), den.begin() + static_cast<long>(lead));
        if (num.empty()) num = {0.0};
        return {num, den};
    }
    return {poly_mul(a.num_, b.den_), den};
}

}  // namespace idl
