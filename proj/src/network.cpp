#include "idl/network.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace idl {

LayeredNetwork::LayeredNetwork(const NetworkConfig& cfg)
    : sizes_(cfg.layer_sizes), gains_(cfg.output_gains), tanh_(cfg.tanh_activation),
      mode_(cfg.mode) {
    if (sizes_.size() < 2)
        throw std::invalid_argument("LayeredNetwork: need input and output sizes");
    for (int s : sizes_)
        if (s < 1) throw std::invalid_argument("LayeredNetwork: layer sizes must be positive");
    if (gains_.empty()) gains_.assign(static_cast<std::size_t>(sizes_.back()), 1.0);
    if (gains_.size() != static_cast<std::size_t>(sizes_.back()))
        throw std::invalid_argument("LayeredNetwork: one output gain per output neuron");

    const int n_layers = static_cast<int>(sizes_.size()) - 1;
    weights_.resize(static_cast<std::size_t>(n_layers));
    acts_.resize(static_cast<std::size_t>(n_layers));
    grads_.resize(static_cast<std::size_t>(n_layers));
    phis_.resize(static_cast<std::size_t>(n_layers));
    input_.assign(static_cast<std::size_t>(sizes_[0]), 0.0);

    // mt19937 output mapped to [0,1) by hand keeps the weight stream
    // identical across standard libraries.
    std::mt19937 rng(cfg.seed);
    for (int l = 0; l < n_layers; ++l) {
        const std::size_t n = rows_of(l) * cols_of(l);
        auto& w = weights_[static_cast<std::size_t>(l)];
        w.resize(n);
        // Amplitude shrinks with sqrt(fan-in) so layer outputs and the
        // backpropagated gradients keep their scale through the depth;
        // a 1/fan_in amplitude collapses the composite gain and stalls
        // the online updates.
        const double scale = (l == 0 ? cfg.input_scale : 1.0) * cfg.init_scale /
                             std::sqrt(static_cast<double>(rows_of(l)));
        for (std::size_t k = 0; k < n; ++k) {
            const double u = static_cast<double>(rng()) / 4294967296.0;  // [0,1)
            w[k] = (2.0 * u - 1.0) * scale;
        }
        acts_[static_cast<std::size_t>(l)].assign(cols_of(l), 0.0);
        grads_[static_cast<std::size_t>(l)].assign(cols_of(l), 0.0);
        phis_[static_cast<std::size_t>(l)].assign(cols_of(l), 0.0);
    }
    init_weights_ = weights_;
}

double LayeredNetwork::forward(std::span<const double> u) {
    if (u.size() != input_.size())
        throw std::invalid_argument("LayeredNetwork::forward: input size mismatch");
    std::copy(u.begin(), u.end(), input_.begin());

    const double* in = input_.data();
    for (int l = 0; l < n_weight_layers(); ++l) {
        auto& out = acts_[static_cast<std::size_t>(l)];
        kernels::dense_forward(mode_, weights(l).data(), rows_of(l), cols_of(l), in, out.data());
        if (tanh_)
            for (double& a : out) a = std::tanh(a);
        in = out.data();
    }
    const auto& top = acts_.back();
    double a_p = 0.0;
    for (std::size_t k = 0; k < top.size(); ++k) a_p += gains_[k] * top[k];
    have_forward_ = true;
    have_backward_ = false;
    have_phi_ = false;
    return a_p;
}

void LayeredNetwork::backward() {
    grads_.back() = gains_;
    for (int l = n_weight_layers() - 2; l >= 0; --l) {
        // g[l][j] = sum_k w[l+1][j][k] * g[l+1][k]
        kernels::dense_backward(mode_, weights(l + 1).data(), rows_of(l + 1), cols_of(l + 1),
                                grads_[static_cast<std::size_t>(l) + 1].data(),
                                grads_[static_cast<std::size_t>(l)].data());
    }
    have_backward_ = true;
}

void LayeredNetwork::internal_errors(const LearningSignal& signal) {
    if (!have_backward_)
        throw std::logic_error("LayeredNetwork::internal_errors: backward() not run");
    if (!std::isfinite(signal.e_c) || !std::isfinite(signal.t_r_output))
        throw NumericError("LayeredNetwork::internal_errors: non-finite learning signal");
    const double drive = 2.0 * signal.t_r_output;
    for (int l = 0; l < n_weight_layers(); ++l) {
        const auto& g = grads_[static_cast<std::size_t>(l)];
        auto& phi = phis_[static_cast<std::size_t>(l)];
        for (std::size_t j = 0; j < g.size(); ++j) phi[j] = drive * g[j];
    }
    have_phi_ = true;
}

double LayeredNetwork::update(double eta) {
    if (!have_forward_ || !have_phi_)
        throw std::logic_error("LayeredNetwork::update: needs forward() and internal_errors()");
    double max_delta = 0.0;
    for (int l = 0; l < n_weight_layers(); ++l) {
        const double* in = (l == 0) ? input_.data() : acts_[static_cast<std::size_t>(l) - 1].data();
        const auto& phi = phis_[static_cast<std::size_t>(l)];
        double max_in = 0.0, max_phi = 0.0;
        for (std::size_t i = 0; i < rows_of(l); ++i) max_in = std::max(max_in, std::abs(in[i]));
        for (double p : phi) max_phi = std::max(max_phi, std::abs(p));
        max_delta = std::max(max_delta, std::abs(eta) * max_phi * max_in);

        kernels::outer_update(mode_, mutable_weights(l).data(), rows_of(l), cols_of(l), in,
                              phi.data(), eta);
        for (double w : weights_[static_cast<std::size_t>(l)])
            if (!std::isfinite(w))
                throw NumericError("LayeredNetwork::update: non-finite weight in layer " +
                                   std::to_string(l));
    }
    return max_delta;
}

std::vector<double> LayeredNetwork::weight_distances() const {
    std::vector<double> d(weights_.size(), 0.0);
    for (std::size_t l = 0; l < weights_.size(); ++l) {
        double acc = 0.0;
        const auto& w = weights_[l];
        const auto& w0 = init_weights_[l];
        for (std::size_t k = 0; k < w.size(); ++k) {
            const double diff = w[k] - w0[k];
            acc += diff * diff;
        }
        d[l] = std::sqrt(acc);
    }
    return d;
}

std::vector<std::vector<double>> LayeredNetwork::first_layer_map() const {
    const std::size_t rows = rows_of(0), cols = cols_of(0);
    const auto& w = weights_[0];
    double peak = 0.0;
    for (double v : w) peak = std::max(peak, std::abs(v));
    std::vector<std::vector<double>> map(rows, std::vector<double>(cols, 0.0));
    if (peak == 0.0) return map;
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) map[i][j] = std::abs(w[i * cols + j]) / peak;
    return map;
}

std::span<const double> LayeredNetwork::weights(int l) const {
    return weights_.at(static_cast<std::size_t>(l));
}

std::span<double> LayeredNetwork::mutable_weights(int l) {
    return weights_.at(static_cast<std::size_t>(l));
}

std::span<const double> LayeredNetwork::activations(int l) const {
    if (l == -1) return input_;
    return acts_.at(static_cast<std::size_t>(l));
}

std::span<const double> LayeredNetwork::gradients(int l) const {
    return grads_.at(static_cast<std::size_t>(l));
}

std::span<const double> LayeredNetwork::internal_errors_of(int l) const {
    return phis_.at(static_cast<std::size_t>(l));
}

std::string LayeredNetwork::weights_to_json() const {
    nlohmann::json j;
    for (int l = 0; l < n_weight_layers(); ++l) {
        nlohmann::json rows = nlohmann::json::array();
        const auto& w = weights_[static_cast<std::size_t>(l)];
        for (std::size_t i = 0; i < rows_of(l); ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (std::size_t j2 = 0; j2 < cols_of(l); ++j2) row.push_back(w[i * cols_of(l) + j2]);
            rows.push_back(std::move(row));
        }
        j[std::to_string(l)] = std::move(rows);
    }
    return j.dump();
}

void LayeredNetwork::save_weights(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << weights_to_json() << "\n";
}

void LayeredNetwork::load_weights_json(const std::string& json_text) {
    const auto j = nlohmann::json::parse(json_text);
    for (int l = 0; l < n_weight_layers(); ++l) {
        const auto& rows = j.at(std::to_string(l));
        if (rows.size() != rows_of(l))
            throw std::invalid_argument("weight snapshot: row count mismatch in layer " +
                                        std::to_string(l));
        auto& w = weights_[static_cast<std::size_t>(l)];
        for (std::size_t i = 0; i < rows_of(l); ++i) {
            const auto& row = rows[i];
            if (row.size() != cols_of(l))
                throw std::invalid_argument("weight snapshot: column count mismatch in layer " +
                                            std::to_string(l));
            for (std::size_t j2 = 0; j2 < cols_of(l); ++j2)
                w[i * cols_of(l) + j2] = row[j2].get<double>();
        }
    }
}

}  // namespace idl
