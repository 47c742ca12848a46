#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "idl/kernels.hpp"

namespace idl {

struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Per-step training signal: the raw closed-loop error sample and that
/// sample driven through the reflex-loop transfer function (unity by
/// default, so the two coincide up to the configured sign).
struct LearningSignal {
    double e_c = 0.0;
    double t_r_output = 0.0;
};

struct NetworkConfig {
    /// Sizes input, hidden..., output; e.g. {40, 12, 6, 1}.
    std::vector<int> layer_sizes;
    /// Action-combination gain per output neuron; the action is
    /// sum_k output_gains[k] * activation[k]. Defaults to {1,..,1}.
    std::vector<double> output_gains;
    unsigned seed = 0;
    /// Weights start uniform in [-init_scale, +init_scale] / sqrt(fan_in).
    double init_scale = 1.5;
    /// Extra multiplier on the first layer's init amplitude. Zero keeps the
    /// untrained action silent while the deeper layers still carry an
    /// order-one gradient path for the updates to ride on.
    double input_scale = 0.0;
    bool tanh_activation = false;  // forward shaping only; gradients stay linear
    ExecMode mode = ExecMode::serial;
};

/// Layered linear network trained online from the closed-loop error: the
/// forward pass produces the predictive action, the backward pass propagates
/// action sensitivities, and the update correlates each neuron's internal
/// error with its input activation.
class LayeredNetwork {
public:
    explicit LayeredNetwork(const NetworkConfig& cfg);

    /// Forward pass; stores activations per layer and returns the action.
    double forward(std::span<const double> u);

    /// Fills internal gradients g[l][j] = d(action)/d(activation[l][j]),
    /// seeded with the output gains. Weight-only; valid for the linear
    /// forward map.
    void backward();

    /// phi[l][j] = 2 * g[l][j] * signal.t_r_output. Requires backward().
    void internal_errors(const LearningSignal& signal);

    /// w[l][i][j] += eta * phi[l][j] * activation[l-1][i]; returns the
    /// largest absolute applied delta. Throws NumericError (with location
    /// diagnostics) if any weight leaves the finite range.
    double update(double eta);

    /// Euclidean distance of each layer's weights from their values at
    /// construction.
    std::vector<double> weight_distances() const;

    /// |first-layer weights| scaled into [0,1] by the layer max
    /// (all-zero layer maps to all zeros). Row-major, rows = inputs.
    std::vector<std::vector<double>> first_layer_map() const;

    int n_weight_layers() const { return static_cast<int>(weights_.size()); }
    int input_size() const { return sizes_.front(); }
    int output_size() const { return sizes_.back(); }
    const std::vector<int>& layer_sizes() const { return sizes_; }
    const std::vector<double>& output_gains() const { return gains_; }

    /// Row-major weight matrix of layer l (rows = fan-in, cols = neurons).
    std::span<const double> weights(int l) const;
    std::span<double> mutable_weights(int l);
    std::span<const double> activations(int l) const;  // l = -1 gives the input
    std::span<const double> gradients(int l) const;
    std::span<const double> internal_errors_of(int l) const;

    void set_mode(ExecMode mode) { mode_ = mode; }

    std::string weights_to_json() const;
    void save_weights(const std::string& path) const;
    void load_weights_json(const std::string& json_text);

private:
    std::vector<int> sizes_;
    std::vector<double> gains_;
    bool tanh_;
    ExecMode mode_;
    std::vector<std::vector<double>> weights_;       // per layer, row-major
    std::vector<std::vector<double>> init_weights_;  // snapshot at construction
    std::vector<double> input_;
    std::vector<std::vector<double>> acts_;
    std::vector<std::vector<double>> grads_;
    std::vector<std::vector<double>> phis_;
    bool have_forward_ = false;
    bool have_backward_ = false;
    bool have_phi_ = false;

    std::size_t rows_of(int l) const { return static_cast<std::size_t>(sizes_[l]); }
    std::size_t cols_of(int l) const { return static_cast<std::size_t>(sizes_[l + 1]); }
};

}  // namespace idl
