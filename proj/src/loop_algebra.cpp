#include "idl/loop_algebra.hpp"

#include <algorithm>
#include <cmath>

namespace idl {

TransferFunction reflex_transfer(const TransferFunction& q_r, const TransferFunction& h_r) {
    // 1 + h q as a single rational block; its numerator polynomial carries
    // the feedback zeros that become the poles of the composition.
    const std::vector<double> fb_num =
        poly_add(poly_mul(q_r.den(), h_r.den()), poly_mul(q_r.num(), h_r.num()));
    if (std::all_of(fb_num.begin(), fb_num.end(), [](double c) { return c == 0.0; }))
        throw CompositionError("reflex_transfer: 1 + h_r q_r is identically zero");
    for (const auto& z : polynomial_roots(fb_num))
        if (std::abs(std::abs(z) - 1.0) < 1e-9)
            throw CompositionError("reflex_transfer: 1 + h_r q_r has a zero on the unit circle");

    const TransferFunction one;
    return -(q_r / (one + h_r * q_r));
}

std::vector<double> closed_loop_error(const LinearLoopConfig& cfg,
                                      std::span<const double> a_p) {
    if (cfg.delay_steps < 0)
        throw std::invalid_argument("closed_loop_error: negative delay");
    if (cfg.s_d.size() != cfg.d.size() || cfg.s_d.size() != a_p.size())
        throw std::invalid_argument("closed_loop_error: sequence lengths differ");

    TransferFunction q = cfg.q_r;
    TransferFunction h = cfg.h_r;
    q.reset();
    h.reset();

    const double loop_ft = q.feedthrough() * h.feedthrough();
    if (loop_ft != 0.0 && !(q.is_static_gain() && h.is_static_gain()))
        throw WellPosednessError(
            "closed_loop_error: instantaneous q_r*h_r path through dynamic blocks");
    if (1.0 + loop_ft == 0.0)
        throw WellPosednessError("closed_loop_error: singular static loop, 1 + q_r h_r = 0");

    const std::size_t n = a_p.size();
    const int delay = cfg.delay_steps;
    std::vector<double> e(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        const double dd = (static_cast<int>(k) >= delay) ? cfg.d[k - delay] : 0.0;
        const auto [cq, gq] = q.peek();
        const auto [ch, gh] = h.peek();
        // e = s_d - (cq + gq*(dd + a_p + ch + gh*e)) solved for e.
        e[k] = (cfg.s_d[k] - cq - gq * (dd + a_p[k] + ch)) / (1.0 + gq * gh);
        const double a_r = h.step(e[k]);
        q.step(dd + a_r + a_p[k]);
    }
    return e;
}

IdentityCheck open_loop_identity_check(const LinearLoopConfig& cfg,
                                       std::span<const double> a_p,
                                       std::span<const double> a_p_desired) {
    if (a_p.size() != a_p_desired.size() || a_p.size() != cfg.d.size())
        throw std::invalid_argument("open_loop_identity_check: sequence lengths differ");

    // Twin plant instances in lockstep. The desired copy receives
    // a_p_desired, the actual copy a_p; both share the disturbance and the
    // reflex stream, so their output difference depends on the action
    // difference only and defines a realisable desired trajectory.
    TransferFunction q_desired = cfg.q_r;
    TransferFunction q_actual = cfg.q_r;
    TransferFunction h = cfg.h_r;
    TransferFunction q_oracle = cfg.q_r;
    q_desired.reset();
    q_actual.reset();
    h.reset();
    q_oracle.reset();

    const std::size_t n = a_p.size();
    const int delay = cfg.delay_steps;
    IdentityCheck out;
    out.e_c.resize(n);
    out.q_r_e_o.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double dd = (static_cast<int>(k) >= delay) ? cfg.d[k - delay] : 0.0;
        const auto [cd, gd] = q_desired.peek();
        const auto [ca, ga] = q_actual.peek();
        // The reflex action enters both copies with identical feedthrough,
        // so it cancels from the instantaneous error.
        const double e = (cd - ca) + gd * a_p_desired[k] - ga * a_p[k];
        const double a_r = h.step(e);
        q_desired.step(dd + a_r + a_p_desired[k]);
        q_actual.step(dd + a_r + a_p[k]);

        out.e_c[k] = e;
        out.q_r_e_o[k] = q_oracle.step(a_p_desired[k] - a_p[k]);
        out.max_deviation = std::max(out.max_deviation, std::abs(out.e_c[k] - out.q_r_e_o[k]));
    }
    return out;
}

}  // namespace idl
