#pragma once

#include <cstddef>

namespace idl {

/// Kernel dispatch for the data-parallel inner loops. The serial variants
/// are the reference implementations; the OpenMP variants partition work
/// across independent output elements and keep every per-element
/// accumulation order identical to the serial code, so results are
/// bit-identical.
enum class ExecMode { serial, openmp };

namespace kernels {

/// out[j] = sum_i w[i*cols + j] * in[i]   (w row-major, rows x cols)
void dense_forward_serial(const double* w, std::size_t rows, std::size_t cols,
                          const double* in, double* out);
void dense_forward_omp(const double* w, std::size_t rows, std::size_t cols,
                       const double* in, double* out);
void dense_forward(ExecMode mode, const double* w, std::size_t rows, std::size_t cols,
                   const double* in, double* out);

/// g[i] = sum_j w[i*cols + j] * g_next[j]
void dense_backward_serial(const double* w, std::size_t rows, std::size_t cols,
                           const double* g_next, double* g);
void dense_backward_omp(const double* w, std::size_t rows, std::size_t cols,
                        const double* g_next, double* g);
void dense_backward(ExecMode mode, const double* w, std::size_t rows, std::size_t cols,
                    const double* g_next, double* g);

/// w[i*cols + j] += eta * phi[j] * in[i]
void outer_update_serial(double* w, std::size_t rows, std::size_t cols,
                         const double* in, const double* phi, double eta);
void outer_update_omp(double* w, std::size_t rows, std::size_t cols,
                      const double* in, const double* phi, double eta);
void outer_update(ExecMode mode, double* w, std::size_t rows, std::size_t cols,
                  const double* in, const double* phi, double eta);

/// Advance n independent biquads by one sample (transposed direct form II,
/// num = [0, b1], den = [1, a1, a2]). in[f] is the input of filter f.
void biquad_bank_step_serial(std::size_t n, const double* b1, const double* a1,
                             const double* a2, double* s0, double* s1,
                             const double* in, double* out);
void biquad_bank_step_omp(std::size_t n, const double* b1, const double* a1,
                          const double* a2, double* s0, double* s1,
                          const double* in, double* out);
void biquad_bank_step(ExecMode mode, std::size_t n, const double* b1, const double* a1,
                      const double* a2, double* s0, double* s1,
                      const double* in, double* out);

}  // namespace kernels
}  // namespace idl
