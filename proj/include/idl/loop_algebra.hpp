#pragma once

#include <vector>

#include "idl/transfer_function.hpp"

namespace idl {

struct WellPosednessError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One linear closed-loop configuration: environment q_r, fixed feedback
/// controller h_r, a pure transport delay on the disturbance path, and the
/// driving sequences (desired state s_d, disturbance d).
struct LinearLoopConfig {
    TransferFunction q_r;
    TransferFunction h_r;
    int delay_steps = 0;
    std::vector<double> s_d;
    std::vector<double> d;
};

/// Transfer function from predictive action to closed-loop error,
/// t_r = -q_r / (1 + h_r q_r), formed by rational coefficient arithmetic.
/// No pole/zero cancellation is attempted. Throws CompositionError if the
/// feedback denominator 1 + h_r q_r degenerates or has a zero on the unit
/// circle.
TransferFunction reflex_transfer(const TransferFunction& q_r, const TransferFunction& h_r);

/// Error sequence e[k] = s_d[k] - s_a[k] obtained by time-stepping the
/// block diagram: the plant q_r is driven by the delayed disturbance, the
/// reflex action h_r(e) and the external action a_p. Static-gain algebraic
/// loops are solved exactly per step; a loop whose instantaneous gain is
/// nonzero through dynamic blocks is rejected as ill-posed.
std::vector<double> closed_loop_error(const LinearLoopConfig& cfg,
                                      std::span<const double> a_p);

struct IdentityCheck {
    double max_deviation = 0.0;
    std::vector<double> e_c;      // closed-loop error, desired-vs-actual route
    std::vector<double> q_r_e_o;  // q_r applied to the open-loop error
};

/// Feeds the actual and the desired action through identical loop
/// configurations (same plant dynamics, same disturbance, one shared reflex
/// stream; the desired state is the loop's own response to the desired
/// action) and compares the resulting closed-loop error against q_r applied
/// to the open-loop error a_p_desired - a_p. Both routes are time-stepped
/// independently; returns the max absolute deviation along with both series.
IdentityCheck open_loop_identity_check(const LinearLoopConfig& cfg,
                                       std::span<const double> a_p,
                                       std::span<const double> a_p_desired);

}  // namespace idl
