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

// NEON kernels for aarch64. A float64x2_t holds one complex double, so the
// win over scalar comes from explicit FMA forms rather than wider lanes.
// The loop structure deliberately mirrors kernels_scalar.cpp.

#include "qsteer/kernels.hpp"

#if defined(QSTEER_HAVE_NEON)

#include <arm_neon.h>

namespace qsteer::kernels {
namespace {

const float64x2_t kSignMP = {-1.0, 1.0};
const float64x2_t kSignPM = {1.0, -1.0};

inline const double* dp(const cd* p) {
  return reinterpret_cast<const double*>(p);
}
inline double* dp(cd* p) { return reinterpret_cast<double*>(p); }

inline float64x2_t cmul1(float64x2_t a, float64x2_t b) {
  // [ar*br - ai*bi, ar*bi + ai*br]
  const float64x2_t t1 = vmulq_laneq_f64(b, a, 0);
  const float64x2_t brev = vextq_f64(b, b, 1);
  const float64x2_t t2 = vmulq_laneq_f64(brev, a, 1);
  return vfmaq_f64(t1, t2, kSignMP);
}

inline float64x2_t cmul1_conj_b(float64x2_t a, float64x2_t b) {
  // a * conj(b) = [ar*br + ai*bi, ai*br - ar*bi]
  const float64x2_t t1 = vmulq_laneq_f64(a, b, 0);
  const float64x2_t arev = vextq_f64(a, a, 1);
  const float64x2_t t2 = vmulq_laneq_f64(arev, b, 1);
  return vfmaq_f64(t1, t2, kSignPM);
}

inline float64x2_t cld(const cd* p) { return vld1q_f64(dp(p)); }
inline void cst(cd* p, float64x2_t v) { vst1q_f64(dp(p), v); }

inline cd tocd(float64x2_t v) {
  return {vgetq_lane_f64(v, 0), vgetq_lane_f64(v, 1)};
}

void cmatvec_neon(const cd* a, const cd* x, cd* y, std::size_t m,
                  std::size_t n) {
  for (std::size_t i = 0; i < m; ++i) {
    const cd* row = a + i * n;
    float64x2_t acc = vdupq_n_f64(0.0);
    for (std::size_t j = 0; j < n; ++j)
      acc = vaddq_f64(acc, cmul1(cld(row + j), cld(x + j)));
    y[i] = tocd(acc);
  }
}

void cgemm_nn_neon(const cd* a, const cd* b, cd* c, std::size_t m,
                   std::size_t k, std::size_t n) {
  for (std::size_t i = 0; i < m * n; ++i) c[i] = cd{0.0, 0.0};
  for (std::size_t i = 0; i < m; ++i) {
    cd* crow = c + i * n;
    for (std::size_t kk = 0; kk < k; ++kk) {
      const float64x2_t aik = cld(a + i * k + kk);
      const cd* brow = b + kk * n;
      for (std::size_t j = 0; j < n; ++j)
        cst(crow + j, vaddq_f64(cld(crow + j), cmul1(aik, cld(brow + j))));
    }
  }
}

void cgemm_nc_acc_neon(const cd* a, const cd* b, cd* c, std::size_t m,
                       std::size_t k, std::size_t n) {
  for (std::size_t i = 0; i < m; ++i) {
    const cd* arow = a + i * k;
    for (std::size_t j = 0; j < n; ++j) {
      const cd* brow = b + j * k;
      float64x2_t acc = vdupq_n_f64(0.0);
      for (std::size_t kk = 0; kk < k; ++kk)
        acc = vaddq_f64(acc, cmul1_conj_b(cld(arow + kk), cld(brow + kk)));
      c[i * n + j] += tocd(acc);
    }
  }
}

void apply_gate1_neon(cd* psi, std::size_t dim, int bit, const cd* u) {
  const std::size_t s = std::size_t{1} << bit;
  const float64x2_t u0 = cld(u);
  const float64x2_t u1 = cld(u + 1);
  const float64x2_t u2 = cld(u + 2);
  const float64x2_t u3 = cld(u + 3);
  for (std::size_t base = 0; base < dim; base += 2 * s) {
    for (std::size_t off = 0; off < s; ++off) {
      const std::size_t i0 = base + off;
      const std::size_t i1 = i0 + s;
      const float64x2_t x0 = cld(psi + i0);
      const float64x2_t x1 = cld(psi + i1);
      cst(psi + i0, vaddq_f64(cmul1(u0, x0), cmul1(u1, x1)));
      cst(psi + i1, vaddq_f64(cmul1(u2, x0), cmul1(u3, x1)));
    }
  }
}

void apply_gate2_neon(cd* psi, std::size_t dim, int bit_hi, int bit_lo,
                      const cd* u) {
  const std::size_t sh = std::size_t{1} << bit_hi;
  const std::size_t sl = std::size_t{1} << bit_lo;
  const std::size_t s1 = sh > sl ? sh : sl;
  const std::size_t s0 = sh > sl ? sl : sh;
  float64x2_t uv[16];
  for (int e = 0; e < 16; ++e) uv[e] = cld(u + e);
  for (std::size_t a = 0; a < dim; a += 2 * s1) {
    for (std::size_t b = a; b < a + s1; b += 2 * s0) {
      for (std::size_t i = b; i < b + s0; ++i) {
        const float64x2_t x0 = cld(psi + i);
        const float64x2_t x1 = cld(psi + i + sl);
        const float64x2_t x2 = cld(psi + i + sh);
        const float64x2_t x3 = cld(psi + i + sh + sl);
        for (int r = 0; r < 4; ++r) {
          float64x2_t y = cmul1(uv[4 * r], x0);
          y = vaddq_f64(y, cmul1(uv[4 * r + 1], x1));
          y = vaddq_f64(y, cmul1(uv[4 * r + 2], x2));
          y = vaddq_f64(y, cmul1(uv[4 * r + 3], x3));
          cst(psi + i + (r & 1 ? sl : 0) + (r & 2 ? sh : 0), y);
        }
      }
    }
  }
}

void apply_cnot_neon(cd* psi, std::size_t dim, int control, int target) {
  const std::size_t sc = std::size_t{1} << control;
  const std::size_t st = std::size_t{1} << target;
  const std::size_t s1 = sc > st ? sc : st;
  const std::size_t s0 = sc > st ? st : sc;
  for (std::size_t a = 0; a < dim; a += 2 * s1) {
    for (std::size_t b = a; b < a + s1; b += 2 * s0) {
      for (std::size_t i = b; i < b + s0; ++i) {
        const float64x2_t tmp = cld(psi + i + sc);
        cst(psi + i + sc, cld(psi + i + sc + st));
        cst(psi + i + sc + st, tmp);
      }
    }
  }
}

cd cdotc_neon(const cd* x, const cd* y, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  for (std::size_t i = 0; i < n; ++i)
    acc = vaddq_f64(acc, cmul1_conj_b(cld(y + i), cld(x + i)));
  return tocd(acc);
}

void rank1_acc_neon(cd* a, cd alpha, const cd* u, const cd* v, std::size_t m,
                    std::size_t n) {
  const float64x2_t al = cld(&alpha);
  for (std::size_t i = 0; i < m; ++i) {
    const float64x2_t w = cmul1(al, cld(u + i));
    cd* row = a + i * n;
    for (std::size_t j = 0; j < n; ++j)
      cst(row + j, vaddq_f64(cld(row + j), cmul1_conj_b(w, cld(v + j))));
  }
}

void dgemv_neon(const double* w, const double* x, const double* bias,
                double* y, std::size_t m, std::size_t n) {
  for (std::size_t i = 0; i < m; ++i) {
    const double* row = w + i * n;
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2)
      acc = vfmaq_f64(acc, vld1q_f64(row + j), vld1q_f64(x + j));
    double s = vaddvq_f64(acc);
    for (; j < n; ++j) s += row[j] * x[j];
    y[i] = (bias ? bias[i] : 0.0) + s;
  }
}

}  // namespace

const Ops& neon() {
  static const Ops table{
      cmatvec_neon,     cgemm_nn_neon, cgemm_nc_acc_neon,
      apply_gate1_neon, apply_gate2_neon, apply_cnot_neon,
      cdotc_neon,       rank1_acc_neon, dgemv_neon,
  };
  return table;
}

}  // namespace qsteer::kernels

#endif  // QSTEER_HAVE_NEON
