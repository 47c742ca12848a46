#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace idl {

struct CompositionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Roots (in z) of a polynomial given in ascending powers of z^-1,
/// i.e. the solutions of c0*z^n + c1*z^(n-1) + ... + cn = 0.
/// Trailing zero coefficients are trimmed before solving.
std::vector<std::complex<double>> polynomial_roots(const std::vector<double>& coeffs);

/// Discrete-time rational filter b(z^-1)/a(z^-1) with direct-form II
/// transposed state. Coefficients are stored as given (ascending powers
/// of z^-1, a[0] != 0); normalisation by a[0] happens at step time.
class TransferFunction {
public:
    /// Identity (unity gain, no dynamics).
    TransferFunction();
    TransferFunction(std::vector<double> num, std::vector<double> den);

    static TransferFunction gain(double g);
    /// Pure delay z^-T realised as num = [0,...,0,1].
    static TransferFunction delay(int steps);

    /// Advance one sample: a0*y[k] = sum_i b_i x[k-i] - sum_{i>=1} a_i y[k-i].
    double step(double x);

    /// The next output is affine in the not-yet-supplied input:
    /// y = bias + feedthrough * x. peek() reads it off the state without
    /// committing; step(x) then produces exactly bias + feedthrough*x.
    struct Affine {
        double bias;
        double feedthrough;
    };
    Affine peek() const;

    void reset();

    const std::vector<double>& num() const { return num_; }
    const std::vector<double>& den() const { return den_; }

    double feedthrough() const { return num_[0] / den_[0]; }
    bool is_static_gain() const;

    /// Poles in the z plane (roots of the denominator).
    std::vector<std::complex<double>> poles() const;
    /// All poles strictly inside the unit circle.
    bool is_stable() const;

    /// First n samples of the impulse response, from zero state.
    std::vector<double> impulse_response(std::size_t n) const;
    /// Filter a whole sequence from zero state (input state untouched).
    std::vector<double> filter(std::span<const double> x) const;

    friend TransferFunction operator*(const TransferFunction& a, const TransferFunction& b);
    friend TransferFunction operator+(const TransferFunction& a, const TransferFunction& b);
    friend TransferFunction operator-(const TransferFunction& a);
    friend TransferFunction operator/(const TransferFunction& a, const TransferFunction& b);

private:
    std::vector<double> num_;
    std::vector<double> den_;
    std::vector<double> bn_;     // num / a0
    std::vector<double> an_;     // den / a0
    std::vector<double> state_;  // max(|num|,|den|) - 1 delay values

    void realize();
};

std::vector<double> poly_mul(const std::vector<double>& a, const std::vector<double>& b);
std::vector<double> poly_add(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace idl
