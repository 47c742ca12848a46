#pragma once

#include <string>
#include <vector>

#include "idl/network.hpp"

namespace idl {

/// Three independent consistency checks of the learning rule on randomly
/// initialised networks:
///  - internal gradients against central finite differences of the action
///    under activation perturbation,
///  - the composed update direction against finite differences of the
///    squared-error cost on a unity plant,
///  - the layer-to-layer internal-error propagation identity.
struct GradCheckReport {
    double max_rel_err_gradients = 0.0;   // tolerance 1e-6
    double max_rel_err_cost = 0.0;        // tolerance 1e-5
    double max_err_phi_identity = 0.0;    // tolerance 1e-12
    int networks_checked = 0;

    bool pass() const {
        return max_rel_err_gradients < 1e-6 && max_rel_err_cost < 1e-5 &&
               max_err_phi_identity < 1e-12;
    }
    std::string to_string() const;
};

GradCheckReport run_gradcheck(const std::vector<int>& layer_sizes,
                              const std::vector<double>& output_gains,
                              unsigned seed, int n_networks = 5);

}  // namespace idl
