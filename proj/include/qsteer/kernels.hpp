// Copyright 2026 The QSteer Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/// \file
/// Data-parallel inner loops shared by the state, channel and model layers.
///
/// Every kernel exists in a scalar reference form and, depending on the
/// build, in AVX2 (x86) or NEON (aarch64) form. The dispatch table is chosen
/// once at startup from CPU features; the QSTEER_SIMD environment variable
/// ("scalar", "avx2", "neon") forces a specific variant. All variants are
/// equivalence-tested against the scalar reference.
///
/// Conventions:
///   - complex arrays are std::complex<double>, interleaved re/im;
///   - matrices are dense row-major;
///   - qubit k of a length-2^n amplitude array is bit k of the index
///     (qubit 0 = least significant bit).

#pragma once

#include <complex>
#include <cstddef>
#include <string_view>
#include <vector>

namespace qsteer::kernels {

using cd = std::complex<double>;

struct Ops {
  // y = A x, A is m-by-n row-major.
  void (*cmatvec)(const cd* a, const cd* x, cd* y, std::size_t m,
                  std::size_t n);

  // C = A B. A is m-by-k, B is k-by-n, C is m-by-n (overwritten).
  void (*cgemm_nn)(const cd* a, const cd* b, cd* c, std::size_t m,
                   std::size_t k, std::size_t n);

  // C += A B^dagger. A is m-by-k, B is n-by-k (so B^dagger is k-by-n).
  void (*cgemm_nc_acc)(const cd* a, const cd* b, cd* c, std::size_t m,
                       std::size_t k, std::size_t n);

  // Single-qubit gate u (2x2 row-major) on index bit `bit` of psi.
  void (*apply_gate1)(cd* psi, std::size_t dim, int bit, const cd* u);

  // Two-qubit gate u (4x4 row-major) on index bits (bit_hi, bit_lo) of psi,
  // where u row/column index is 2*b(bit_hi) + b(bit_lo). bit_hi and bit_lo
  // are labels, not an ordering requirement.
  void (*apply_gate2)(cd* psi, std::size_t dim, int bit_hi, int bit_lo,
                      const cd* u);

  // CNOT: flips index bit `target` wherever index bit `control` is set.
  void (*apply_cnot)(cd* psi, std::size_t dim, int control, int target);

  // sum_i conj(x_i) y_i
  cd (*cdotc)(const cd* x, const cd* y, std::size_t n);

  // A += alpha * u v^dagger, A is m-by-n row-major.
  void (*rank1_acc)(cd* a, cd alpha, const cd* u, const cd* v, std::size_t m,
                    std::size_t n);

  // y = W x + bias (bias may be null), W is m-by-n row-major, all real.
  void (*dgemv)(const double* w, const double* x, const double* bias,
                double* y, std::size_t m, std::size_t n);
};

/// Scalar reference kernels. Always available.
const Ops& scalar();

/// The variant selected at startup (CPU detection + QSTEER_SIMD override).
const Ops& active();

/// Name of the active variant: "scalar", "avx2" or "neon".
std::string_view active_name();

/// Variants compiled into this binary, e.g. {"scalar", "avx2"}.
std::vector<std::string_view> compiled_variants();

/// Force a variant by name. Returns false (and leaves the active table
/// unchanged) if the variant is not compiled in or not supported here.
bool set_active(std::string_view name);

#if defined(QSTEER_HAVE_AVX2)
const Ops& avx2();
bool avx2_supported();
#endif
#if defined(QSTEER_HAVE_NEON)
const Ops& neon();
#endif

}  // namespace qsteer::kernels
