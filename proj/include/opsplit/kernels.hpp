#pragma once

// Dense double-precision kernels behind RealVector and DenseOperator.
//
// Every kernel has a portable scalar reference implementation. SIMD variants
// (AVX2+FMA on x86-64, NEON on AArch64) are compiled when the toolchain can
// target them and picked at runtime from CPU feature detection. The
// OPSPLIT_KERNELS environment variable (scalar | avx2 | neon) overrides the
// choice, e.g. to replay a trace bit-for-bit on the reference path.
//
// Rounding contract across backends:
//   axpby        bit-identical (no fused multiply-add)
//   dot, gemv*   same value up to reassociation of the sum, i.e. within
//                n * eps * sum|a_i b_i|

#include <cstddef>
#include <optional>
#include <string_view>

namespace opsplit::kernels {

enum class Backend { scalar, avx2, neon };

struct KernelTable {
  Backend backend;
  // sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);
  // out[i] = alpha * x[i] + beta * y[i]; out may alias x or y
  void (*axpby)(double alpha, const double* x, double beta, const double* y, double* out,
                std::size_t n);
  // y = A x, A row-major rows x cols
  void (*gemv)(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y);
  // y = A^T x, A row-major rows x cols
  void (*gemv_t)(const double* a, std::size_t rows, std::size_t cols, const double* x,
                 double* y);
};

const KernelTable& scalar_table();

// nullptr when the backend was not compiled in or the CPU lacks the features.
const KernelTable* table_for(Backend backend);

bool available(Backend backend);

// The table used by the library. Resolved once on first use.
const KernelTable& active();

// Forces a backend for the whole process (tests, reproducibility runs).
// Throws opsplit::Error if the backend is unavailable.
void set_backend(Backend backend);

std::string_view to_string(Backend backend);
std::optional<Backend> parse_backend(std::string_view name);

namespace detail {
const KernelTable* avx2_table();
const KernelTable* neon_table();
}  // namespace detail

}  // namespace opsplit::kernels
