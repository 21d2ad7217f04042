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

// Scalar reference kernels. These are the ground truth the SIMD variants are
// tested against, so they stay deliberately plain: no blocking, no manual
// unrolling. Complex arithmetic is written out on doubles to keep the
// reference free of libstdc++'s NaN-recovery branch in operator*.

#include "qsteer/kernels.hpp"

namespace qsteer::kernels {
namespace {

inline cd cmul(cd a, cd b) {
  return {a.real() * b.real() - a.imag() * b.imag(),
          a.real() * b.imag() + a.imag() * b.real()};
}

inline cd cmul_conj_b(cd a, cd b) {
  // a * conj(b)
  return {a.real() * b.real() + a.imag() * b.imag(),
          a.imag() * b.real() - a.real() * b.imag()};
}

void cmatvec_scalar(const cd* a, const cd* x, cd* y, std::size_t m,
                    std::size_t n) {
  for (std::size_t i = 0; i < m; ++i) {
    cd acc{0.0, 0.0};
    const cd* row = a + i * n;
    for (std::size_t j = 0; j < n; ++j) acc += cmul(row[j], x[j]);
    y[i] = acc;
  }
}

void cgemm_nn_scalar(const cd* a, const cd* b, cd* c, std::size_t m,
                     std::size_t k, std::size_t n) {
  for (std::size_t i = 0; i < m * n; ++i) c[i] = cd{0.0, 0.0};
  for (std::size_t i = 0; i < m; ++i) {
    cd* crow = c + i * n;
    for (std::size_t kk = 0; kk < k; ++kk) {
      const cd aik = a[i * k + kk];
      const cd* brow = b + kk * n;
      for (std::size_t j = 0; j < n; ++j) crow[j] += cmul(aik, brow[j]);
    }
  }
}

void cgemm_nc_acc_scalar(const cd* a, const cd* b, cd* c, std::size_t m,
                         std::size_t k, std::size_t n) {
  for (std::size_t i = 0; i < m; ++i) {
    const cd* arow = a + i * k;
    for (std::size_t j = 0; j < n; ++j) {
      const cd* brow = b + j * k;
      cd acc{0.0, 0.0};
      for (std::size_t kk = 0; kk < k; ++kk)
        acc += cmul_conj_b(arow[kk], brow[kk]);
      c[i * n + j] += acc;
    }
  }
}

void apply_gate1_scalar(cd* psi, std::size_t dim, int bit, const cd* u) {
  const std::size_t s = std::size_t{1} << bit;
  for (std::size_t base = 0; base < dim; base += 2 * s) {
    for (std::size_t off = 0; off < s; ++off) {
      const std::size_t i0 = base + off;
      const std::size_t i1 = i0 + s;
      const cd x0 = psi[i0];
      const cd x1 = psi[i1];
      psi[i0] = cmul(u[0], x0) + cmul(u[1], x1);
      psi[i1] = cmul(u[2], x0) + cmul(u[3], x1);
    }
  }
}

void apply_gate2_scalar(cd* psi, std::size_t dim, int bit_hi, int bit_lo,
                        const cd* u) {
  const std::size_t sh = std::size_t{1} << bit_hi;
  const std::size_t sl = std::size_t{1} << bit_lo;
  const std::size_t s1 = sh > sl ? sh : sl;  // numeric outer stride
  const std::size_t s0 = sh > sl ? sl : sh;
  for (std::size_t a = 0; a < dim; a += 2 * s1) {
    for (std::size_t b = a; b < a + s1; b += 2 * s0) {
      for (std::size_t i = b; i < b + s0; ++i) {
        const std::size_t i00 = i;
        const std::size_t i01 = i + sl;   // bit_lo set
        const std::size_t i10 = i + sh;   // bit_hi set
        const std::size_t i11 = i + sh + sl;
        const cd x0 = psi[i00];
        const cd x1 = psi[i01];
        const cd x2 = psi[i10];
        const cd x3 = psi[i11];
        psi[i00] = cmul(u[0], x0) + cmul(u[1], x1) + cmul(u[2], x2) +
                   cmul(u[3], x3);
        psi[i01] = cmul(u[4], x0) + cmul(u[5], x1) + cmul(u[6], x2) +
                   cmul(u[7], x3);
        psi[i10] = cmul(u[8], x0) + cmul(u[9], x1) + cmul(u[10], x2) +
                   cmul(u[11], x3);
        psi[i11] = cmul(u[12], x0) + cmul(u[13], x1) + cmul(u[14], x2) +
                   cmul(u[15], x3);
      }
    }
  }
}

void apply_cnot_scalar(cd* psi, std::size_t dim, int control, int target) {
  const std::size_t sc = std::size_t{1} << control;
  const std::size_t st = std::size_t{1} << target;
  const std::size_t s1 = sc > st ? sc : st;
  const std::size_t s0 = sc > st ? st : sc;
  for (std::size_t a = 0; a < dim; a += 2 * s1) {
    for (std::size_t b = a; b < a + s1; b += 2 * s0) {
      for (std::size_t i = b; i < b + s0; ++i) {
        // control set, target clear <-> control set, target set
        const std::size_t j0 = i + sc;
        const std::size_t j1 = i + sc + st;
        const cd tmp = psi[j0];
        psi[j0] = psi[j1];
        psi[j1] = tmp;
      }
    }
  }
}

cd cdotc_scalar(const cd* x, const cd* y, std::size_t n) {
  cd acc{0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) acc += cmul_conj_b(y[i], x[i]);
  return acc;
}

void rank1_acc_scalar(cd* a, cd alpha, const cd* u, const cd* v,
                      std::size_t m, std::size_t n) {
  for (std::size_t i = 0; i < m; ++i) {
    const cd w = cmul(alpha, u[i]);
    cd* row = a + i * n;
    for (std::size_t j = 0; j < n; ++j) row[j] += cmul_conj_b(w, v[j]);
  }
}

void dgemv_scalar(const double* w, const double* x, const double* bias,
                  double* y, std::size_t m, std::size_t n) {
  for (std::size_t i = 0; i < m; ++i) {
    double acc = bias ? bias[i] : 0.0;
    const double* row = w + i * n;
    for (std::size_t j = 0; j < n; ++j) acc += row[j] * x[j];
    y[i] = acc;
  }
}

}  // namespace

const Ops& scalar() {
  static const Ops table{
      cmatvec_scalar,     cgemm_nn_scalar, cgemm_nc_acc_scalar,
      apply_gate1_scalar, apply_gate2_scalar, apply_cnot_scalar,
      cdotc_scalar,       rank1_acc_scalar, dgemv_scalar,
  };
  return table;
}

}  // namespace qsteer::kernels
