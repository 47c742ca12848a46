#include "idl/gradcheck.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace idl {

namespace {

double uniform(std::mt19937& rng, double lo, double hi) {
    const double u = static_cast<double>(rng()) / 4294967296.0;
    return lo + (hi - lo) * u;
}

// Action of the network when layer `l` activations are overridden with
// `lambda` and propagation continues upward. l = -1 propagates the input.
double action_from(const LayeredNetwork& net, int l, std::vector<double> lambda) {
    const auto& sizes = net.layer_sizes();
    for (int m = l + 1; m < net.n_weight_layers(); ++m) {
        const auto w = net.weights(m);
        const std::size_t rows = static_cast<std::size_t>(sizes[static_cast<std::size_t>(m)]);
        const std::size_t cols = static_cast<std::size_t>(sizes[static_cast<std::size_t>(m) + 1]);
        std::vector<double> next(cols, 0.0);
        for (std::size_t j = 0; j < cols; ++j)
            for (std::size_t i = 0; i < rows; ++i) next[j] += w[i * cols + j] * lambda[i];
        lambda = std::move(next);
    }
    double a = 0.0;
    for (std::size_t k = 0; k < lambda.size(); ++k) a += net.output_gains()[k] * lambda[k];
    return a;
}

double rel_err(double got, double want) {
    const double denom = std::max({std::abs(got), std::abs(want), 1e-9});
    return std::abs(got - want) / denom;
}

}  // namespace

GradCheckReport run_gradcheck(const std::vector<int>& layer_sizes,
                              const std::vector<double>& output_gains,
                              unsigned seed, int n_networks) {
    GradCheckReport report;
    std::mt19937 rng(seed);

    for (int trial = 0; trial < n_networks; ++trial) {
        NetworkConfig cfg;
        cfg.layer_sizes = layer_sizes;
        cfg.output_gains = output_gains;
        cfg.seed = rng();
        cfg.init_scale = 2.0;  // spread out so gradients are well away from zero
        LayeredNetwork net(cfg);

        std::vector<double> u(static_cast<std::size_t>(net.input_size()));
        for (double& v : u) v = uniform(rng, -1.0, 1.0);
        const double a_p = net.forward(u);
        net.backward();

        // (a) internal gradients vs central differences under activation
        // perturbation.
        const double h = 1e-6;
        for (int l = 0; l < net.n_weight_layers(); ++l) {
            const auto acts = net.activations(l);
            const auto grads = net.gradients(l);
            for (std::size_t j = 0; j < acts.size(); ++j) {
                std::vector<double> lam(acts.begin(), acts.end());
                lam[j] = acts[j] + h;
                const double up = action_from(net, l, lam);
                lam[j] = acts[j] - h;
                const double dn = action_from(net, l, lam);
                const double fd = (up - dn) / (2.0 * h);
                report.max_rel_err_gradients =
                    std::max(report.max_rel_err_gradients, rel_err(grads[j], fd));
            }
        }

        // (b) composed update direction vs finite differences of the cost
        // c = (a_d - a_p)^2 on a unity plant with unity reflex transfer.
        const double a_d = uniform(rng, -1.0, 1.0);
        const double e_c = a_d - a_p;
        net.internal_errors({e_c, e_c});
        // The cost is quadratic in each weight, so the central difference is
        // exact up to rounding; a wider step just lowers the noise floor.
        const double wh = 1e-3;
        for (int l = 0; l < net.n_weight_layers(); ++l) {
            const auto phi = net.internal_errors_of(l);
            const auto in = net.activations(l - 1);
            const std::size_t cols = phi.size();
            for (std::size_t i = 0; i < in.size(); ++i) {
                for (std::size_t j = 0; j < cols; ++j) {
                    // update direction per unit eta
                    const double dir = phi[j] * in[i];
                    auto w = net.mutable_weights(l);
                    const double w0 = w[i * cols + j];
                    w[i * cols + j] = w0 + wh;
                    double e = a_d - action_from(net, -1, {u.begin(), u.end()});
                    const double c_up = e * e;
                    w[i * cols + j] = w0 - wh;
                    e = a_d - action_from(net, -1, {u.begin(), u.end()});
                    const double c_dn = e * e;
                    w[i * cols + j] = w0;
                    const double fd = (c_up - c_dn) / (2.0 * wh);
                    report.max_rel_err_cost =
                        std::max(report.max_rel_err_cost, rel_err(dir, -fd));
                }
            }
        }

        // (c) phi via own gradient vs phi propagated from the layer above.
        for (int l = 0; l + 1 < net.n_weight_layers(); ++l) {
            const auto phi = net.internal_errors_of(l);
            const auto phi_up = net.internal_errors_of(l + 1);
            const auto w = net.weights(l + 1);
            const std::size_t cols = phi_up.size();
            for (std::size_t j = 0; j < phi.size(); ++j) {
                double via_above = 0.0;
                for (std::size_t k = 0; k < cols; ++k) via_above += w[j * cols + k] * phi_up[k];
                const double scale = std::max({1.0, std::abs(phi[j]), std::abs(via_above)});
                report.max_err_phi_identity =
                    std::max(report.max_err_phi_identity, std::abs(phi[j] - via_above) / scale);
            }
        }
        ++report.networks_checked;
    }
    return report;
}

std::string GradCheckReport::to_string() const {
    std::ostringstream os;
    os << "gradcheck over " << networks_checked << " networks\n"
       << "  internal gradients vs finite differences: max rel err = " << max_rel_err_gradients
       << " (tol 1e-6)\n"
       << "  update direction vs cost finite differences: max rel err = " << max_rel_err_cost
       << " (tol 1e-5)\n"
       << "  deep-layer propagation identity: max err = " << max_err_phi_identity
       << " (tol 1e-12)\n"
       << (pass() ? "PASS" : "FAIL") << "\n";
    return os.str();
}

}  // namespace idl
