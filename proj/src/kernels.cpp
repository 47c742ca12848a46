#include "idl/kernels.hpp"

namespace idl::kernels {

void dense_forward_serial(const double* w, std::size_t rows, std::size_t cols,
                          const double* in, double* out) {
    for (std::size_t j = 0; j < cols; ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i < rows; ++i) acc += w[i * cols + j] * in[i];
        out[j] = acc;
    }
}

void dense_forward_omp(const double* w, std::size_t rows, std::size_t cols,
                       const double* in, double* out) {
#pragma omp parallel for schedule(static)
    for (std::size_t j = 0; j < cols; ++j) {
        double acc = 0.0;
        for (std::size_t i = 0; i < rows; ++i) acc += w[i * cols + j] * in[i];
        out[j] = acc;
    }
}

void dense_forward(ExecMode mode, const double* w, std::size_t rows, std::size_t cols,
                   const double* in, double* out) {
    if (mode == ExecMode::openmp)
        dense_forward_omp(w, rows, cols, in, out);
    else
        dense_forward_serial(w, rows, cols, in, out);
}

void dense_backward_serial(const double* w, std::size_t rows, std::size_t cols,
                           const double* g_next, double* g) {
    for (std::size_t i = 0; i < rows; ++i) {
        double acc = 0.0;
        const double* row = w + i * cols;
        for (std::size_t j = 0; j < cols; ++j) acc += row[j] * g_next[j];
        g[i] = acc;
    }
}

void dense_backward_omp(const double* w, std::size_t rows, std::size_t cols,
                        const double* g_next, double* g) {
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < rows; ++i) {
        double acc = 0.0;
        const double* row = w + i * cols;
        for (std::size_t j = 0; j < cols; ++j) acc += row[j] * g_next[j];
        g[i] = acc;
    }
}

void dense_backward(ExecMode mode, const double* w, std::size_t rows, std::size_t cols,
                    const double* g_next, double* g) {
    if (mode == ExecMode::openmp)
        dense_backward_omp(w, rows, cols, g_next, g);
    else
        dense_backward_serial(w, rows, cols, g_next, g);
}

void outer_update_serial(double* w, std::size_t rows, std::size_t cols,
                         const double* in, const double* phi, double eta) {
    for (std::size_t i = 0; i < rows; ++i) {
        double* row = w + i * cols;
        const double scaled = eta * in[i];
        for (std::size_t j = 0; j < cols; ++j) row[j] += scaled * phi[j];
    }
}

void outer_update_omp(double* w, std::size_t rows, std::size_t cols,
                      const double* in, const double* phi, double eta) {
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < rows; ++i) {
        double* row = w + i * cols;
        const double scaled = eta * in[i];
        for (std::size_t j = 0; j < cols; ++j) row[j] += scaled * phi[j];
    }
}

void outer_update(ExecMode mode, double* w, std::size_t rows, std::size_t cols,
                  const double* in, const double* phi, double eta) {
    if (mode == ExecMode::openmp)
        outer_update_omp(w, rows, cols, in, phi, eta);
    else
        outer_update_serial(w, rows, cols, in, phi, eta);
}

void biquad_bank_step_serial(std::size_t n, const double* b1, const double* a1,
                             const double* a2, double* s0, double* s1,
                             const double* in, double* out) {
    for (std::size_t f = 0; f < n; ++f) {
        const double x = in[f];
        const double y = s0[f];
        s0[f] = b1[f] * x - a1[f] * y + s1[f];
        s1[f] = -a2[f] * y;
        out[f] = y;
    }
}

void biquad_bank_step_omp(std::size_t n, const double* b1, const double* a1,
                          const double* a2, double* s0, double* s1,
                          const double* in, double* out) {
#pragma omp parallel for schedule(static)
    for (std::size_t f = 0; f < n; ++f) {
        const double x = in[f];
        const double y = s0[f];
        s0[f] = b1[f] * x - a1[f] * y + s1[f];
        s1[f] = -a2[f] * y;
        out[f] = y;
    }
}

void biquad_bank_step(ExecMode mode, std::size_t n, const double* b1, const double* a1,
                      const double* a2, double* s0, double* s1,
                      const double* in, double* out) {
    if (mode == ExecMode::openmp)
        biquad_bank_step_omp(n, b1, a1, a2, s0, s1, in, out);
    else
        biquad_bank_step_serial(n, b1, a1, a2, s0, s1, in, out);
}

}  // namespace idl::kernels
