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

// AVX2+FMA kernels. A __m256d holds two interleaved complex doubles
// [re0 im0 re1 im1]; complex products are built from fmaddsub/fmsubadd so
// even lanes subtract (real parts) and odd lanes add (imaginary parts).
// This file is compiled with -mavx2 -mfma on x86 targets only.

#include "qsteer/kernels.hpp"

#if defined(QSTEER_HAVE_AVX2)

#include <immintrin.h>

namespace qsteer::kernels {
namespace {

inline cd cmul(cd a, cd b) {
  return {a.real() * b.real() - a.imag() * b.imag(),
          a.real() * b.imag() + a.imag() * b.real()};
}

inline cd cmul_conj_b(cd a, cd b) {
  return {a.real() * b.real() + a.imag() * b.imag(),
          a.imag() * b.real() - a.real() * b.imag()};
}

inline const double* dp(const cd* p) {
  return reinterpret_cast<const double*>(p);
}
inline double* dp(cd* p) { return reinterpret_cast<double*>(p); }

// Two complex products a*b per register.
inline __m256d cmul2(__m256d a, __m256d b) {
  const __m256d bre = _mm256_movedup_pd(b);       // [br0 br0 br1 br1]
  const __m256d bim = _mm256_permute_pd(b, 0xF);  // [bi0 bi0 bi1 bi1]
  const __m256d asw = _mm256_permute_pd(a, 0x5);  // [ai0 ar0 ai1 ar1]
  return _mm256_fmaddsub_pd(a, bre, _mm256_mul_pd(asw, bim));
}

// Two products a*conj(b) per register.
inline __m256d cmul2_conj_b(__m256d a, __m256d b) {
  const __m256d bre = _mm256_movedup_pd(b);
  const __m256d bim = _mm256_permute_pd(b, 0xF);
  const __m256d asw = _mm256_permute_pd(a, 0x5);
  return _mm256_fmsubadd_pd(a, bre, _mm256_mul_pd(asw, bim));
}

// x * w for broadcast complex w = (wre, wim) given as splatted registers.
inline __m256d cmul2_bcast(__m256d x, __m256d wre, __m256d wim) {
  const __m256d xsw = _mm256_permute_pd(x, 0x5);
  return _mm256_fmaddsub_pd(x, wre, _mm256_mul_pd(xsw, wim));
}

// w * conj(v) for broadcast complex w:
// [vr*wr + vi*wi, vr*wi - vi*wr].
inline __m256d cmul2_conj_v_bcast(__m256d v, __m256d wre, __m256d wim) {
  const __m256d vsw = _mm256_permute_pd(v, 0x5);
  return _mm256_fmsubadd_pd(vsw, wim, _mm256_mul_pd(v, wre));
}

// Horizontal sum of the two complex lanes.
inline cd reduce_c(__m256d acc) {
  const __m128d lo = _mm256_castpd256_pd128(acc);
  const __m128d hi = _mm256_extractf128_pd(acc, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  alignas(16) double out[2];
  _mm_store_pd(out, s);
  return {out[0], out[1]};
}

void cmatvec_avx2(const cd* a, const cd* x, cd* y, std::size_t m,
                  std::size_t n) {
  for (std::size_t i = 0; i < m; ++i) {
    const cd* row = a + i * n;
    __m256d acc = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
      const __m256d av = _mm256_loadu_pd(dp(row + j));
      const __m256d xv = _mm256_loadu_pd(dp(x + j));
      acc = _mm256_add_pd(acc, cmul2(av, xv));
    }
    cd s = reduce_c(acc);
    for (; j < n; ++j) s += cmul(row[j], x[j]);
    y[i] = s;
  }
}

void cgemm_nn_avx2(const cd* a, const cd* b, cd* c, std::size_t m,
                   std::size_t k, std::size_t n) {
  for (std::size_t i = 0; i < m * n; ++i) c[i] = cd{0.0, 0.0};
  for (std::size_t i = 0; i < m; ++i) {
    cd* crow = c + i * n;
    for (std::size_t kk = 0; kk < k; ++kk) {
      const cd aik = a[i * k + kk];
      const __m256d are = _mm256_set1_pd(aik.real());
      const __m256d aim = _mm256_set1_pd(aik.imag());
      const cd* brow = b + kk * n;
      std::size_t j = 0;
      for (; j + 2 <= n; j += 2) {
        const __m256d bv = _mm256_loadu_pd(dp(brow + j));
        const __m256d cv = _mm256_loadu_pd(dp(crow + j));
        _mm256_storeu_pd(dp(crow + j),
                         _mm256_add_pd(cv, cmul2_bcast(bv, are, aim)));
      }
      for (; j < n; ++j) crow[j] += cmul(aik, brow[j]);
    }
  }
}

void cgemm_nc_acc_avx2(const cd* a, const cd* b, cd* c, std::size_t m,
                       std::size_t k, std::size_t n) {
  for (std::size_t i = 0; i < m; ++i) {
    const cd* arow = a + i * k;
    for (std::size_t j = 0; j < n; ++j) {
      const cd* brow = b + j * k;
      __m256d acc = _mm256_setzero_pd();
      std::size_t kk = 0;
      for (; kk + 2 <= k; kk += 2) {
        const __m256d av = _mm256_loadu_pd(dp(arow + kk));
        const __m256d bv = _mm256_loadu_pd(dp(brow + kk));
        acc = _mm256_add_pd(acc, cmul2_conj_b(av, bv));
      }
      cd s = reduce_c(acc);
      for (; kk < k; ++kk) s += cmul_conj_b(arow[kk], brow[kk]);
      c[i * n + j] += s;
    }
  }
}

void apply_gate1_avx2(cd* psi, std::size_t dim, int bit, const cd* u) {
  const std::size_t s = std::size_t{1} << bit;
  const __m256d u0re = _mm256_set1_pd(u[0].real());
  const __m256d u0im = _mm256_set1_pd(u[0].imag());
  const __m256d u1re = _mm256_set1_pd(u[1].real());
  const __m256d u1im = _mm256_set1_pd(u[1].imag());
  const __m256d u2re = _mm256_set1_pd(u[2].real());
  const __m256d u2im = _mm256_set1_pd(u[2].imag());
  const __m256d u3re = _mm256_set1_pd(u[3].real());
  const __m256d u3im = _mm256_set1_pd(u[3].imag());

  if (s == 1) {
    // Adjacent pairs: gather (x0,x1) across two pairs per iteration.
    std::size_t i = 0;
    for (; i + 4 <= dim; i += 4) {
      const __m256d p0 = _mm256_loadu_pd(dp(psi + i));      // [x0 x1] pair A
      const __m256d p1 = _mm256_loadu_pd(dp(psi + i + 2));  // [x0 x1] pair B
      const __m256d x0 = _mm256_permute2f128_pd(p0, p1, 0x20);
      const __m256d x1 = _mm256_permute2f128_pd(p0, p1, 0x31);
      const __m256d y0 = _mm256_add_pd(cmul2_bcast(x0, u0re, u0im),
                                       cmul2_bcast(x1, u1re, u1im));
      const __m256d y1 = _mm256_add_pd(cmul2_bcast(x0, u2re, u2im),
                                       cmul2_bcast(x1, u3re, u3im));
      _mm256_storeu_pd(dp(psi + i), _mm256_permute2f128_pd(y0, y1, 0x20));
      _mm256_storeu_pd(dp(psi + i + 2), _mm256_permute2f128_pd(y0, y1, 0x31));
    }
    for (; i < dim; i += 2) {
      const cd x0 = psi[i];
      const cd x1 = psi[i + 1];
      psi[i] = cmul(u[0], x0) + cmul(u[1], x1);
      psi[i + 1] = cmul(u[2], x0) + cmul(u[3], x1);
    }
    return;
  }

  for (std::size_t base = 0; base < dim; base += 2 * s) {
    for (std::size_t off = 0; off < s; off += 2) {
      const std::size_t i0 = base + off;
      const std::size_t i1 = i0 + s;
      const __m256d x0 = _mm256_loadu_pd(dp(psi + i0));
      const __m256d x1 = _mm256_loadu_pd(dp(psi + i1));
      const __m256d y0 = _mm256_add_pd(cmul2_bcast(x0, u0re, u0im),
                                       cmul2_bcast(x1, u1re, u1im));
      const __m256d y1 = _mm256_add_pd(cmul2_bcast(x0, u2re, u2im),
                                       cmul2_bcast(x1, u3re, u3im));
      _mm256_storeu_pd(dp(psi + i0), y0);
      _mm256_storeu_pd(dp(psi + i1), y1);
    }
  }
}

void apply_gate2_avx2(cd* psi, std::size_t dim, int bit_hi, int bit_lo,
                      const cd* u) {
  const std::size_t sh = std::size_t{1} << bit_hi;
  const std::size_t sl = std::size_t{1} << bit_lo;
  const std::size_t s1 = sh > sl ? sh : sl;
  const std::size_t s0 = sh > sl ? sl : sh;

  if (s0 >= 2) {
    __m256d ure[16], uim[16];
    for (int e = 0; e < 16; ++e) {
      ure[e] = _mm256_set1_pd(u[e].real());
      uim[e] = _mm256_set1_pd(u[e].imag());
    }
    for (std::size_t a = 0; a < dim; a += 2 * s1) {
      for (std::size_t b = a; b < a + s1; b += 2 * s0) {
        for (std::size_t i = b; i < b + s0; i += 2) {
          const __m256d x0 = _mm256_loadu_pd(dp(psi + i));
          const __m256d x1 = _mm256_loadu_pd(dp(psi + i + sl));
          const __m256d x2 = _mm256_loadu_pd(dp(psi + i + sh));
          const __m256d x3 = _mm256_loadu_pd(dp(psi + i + sh + sl));
          for (int r = 0; r < 4; ++r) {
            __m256d y = cmul2_bcast(x0, ure[4 * r], uim[4 * r]);
            y = _mm256_add_pd(y, cmul2_bcast(x1, ure[4 * r + 1], uim[4 * r + 1]));
            y = _mm256_add_pd(y, cmul2_bcast(x2, ure[4 * r + 2], uim[4 * r + 2]));
            y = _mm256_add_pd(y, cmul2_bcast(x3, ure[4 * r + 3], uim[4 * r + 3]));
            const std::size_t idx =
                i + (r & 1 ? sl : 0) + (r & 2 ? sh : 0);
            _mm256_storeu_pd(dp(psi + idx), y);
          }
        }
      }
    }
    return;
  }

  // Inner stride 1: quad members interleave, keep it scalar.
  for (std::size_t a = 0; a < dim; a += 2 * s1) {
    for (std::size_t b = a; b < a + s1; b += 2 * s0) {
      for (std::size_t i = b; i < b + s0; ++i) {
        const cd x0 = psi[i];
        const cd x1 = psi[i + sl];
        const cd x2 = psi[i + sh];
        const cd x3 = psi[i + sh + sl];
        psi[i] = cmul(u[0], x0) + cmul(u[1], x1) + cmul(u[2], x2) +
                 cmul(u[3], x3);
        psi[i + sl] = cmul(u[4], x0) + cmul(u[5], x1) + cmul(u[6], x2) +
                      cmul(u[7], x3);
        psi[i + sh] = cmul(u[8], x0) + cmul(u[9], x1) + cmul(u[10], x2) +
                      cmul(u[11], x3);
        psi[i + sh + sl] = cmul(u[12], x0) + cmul(u[13], x1) +
                           cmul(u[14], x2) + cmul(u[15], x3);
      }
    }
  }
}

void apply_cnot_avx2(cd* psi, std::size_t dim, int control, int target) {
  const std::size_t sc = std::size_t{1} << control;
  const std::size_t st = std::size_t{1} << target;
  const std::size_t s1 = sc > st ? sc : st;
  const std::size_t s0 = sc > st ? st : sc;
  for (std::size_t a = 0; a < dim; a += 2 * s1) {
    for (std::size_t b = a; b < a + s1; b += 2 * s0) {
      std::size_t i = b;
      if (s0 >= 2) {
        for (; i + 2 <= b + s0; i += 2) {
          const __m256d v0 = _mm256_loadu_pd(dp(psi + i + sc));
          const __m256d v1 = _mm256_loadu_pd(dp(psi + i + sc + st));
          _mm256_storeu_pd(dp(psi + i + sc), v1);
          _mm256_storeu_pd(dp(psi + i + sc + st), v0);
        }
      }
      for (; i < b + s0; ++i) {
        const cd tmp = psi[i + sc];
        psi[i + sc] = psi[i + sc + st];
        psi[i + sc + st] = tmp;
      }
    }
  }
}

cd cdotc_avx2(const cd* x, const cd* y, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(dp(x + i));
    const __m256d yv = _mm256_loadu_pd(dp(y + i));
    acc = _mm256_add_pd(acc, cmul2_conj_b(yv, xv));
  }
  cd s = reduce_c(acc);
  for (; i < n; ++i) s += cmul_conj_b(y[i], x[i]);
  return s;
}

void rank1_acc_avx2(cd* a, cd alpha, const cd* u, const cd* v, std::size_t m,
                    std::size_t n) {
  for (std::size_t i = 0; i < m; ++i) {
    const cd w = cmul(alpha, u[i]);
    const __m256d wre = _mm256_set1_pd(w.real());
    const __m256d wim = _mm256_set1_pd(w.imag());
    cd* row = a + i * n;
    std::size_t j = 0;
    for (; j + 2 <= n; j += 2) {
      const __m256d vv = _mm256_loadu_pd(dp(v + j));
      const __m256d rv = _mm256_loadu_pd(dp(row + j));
      _mm256_storeu_pd(dp(row + j),
                       _mm256_add_pd(rv, cmul2_conj_v_bcast(vv, wre, wim)));
    }
    for (; j < n; ++j) row[j] += cmul_conj_b(w, v[j]);
  }
}

void dgemv_avx2(const double* w, const double* x, const double* bias,
                double* y, std::size_t m, std::size_t n) {
  for (std::size_t i = 0; i < m; ++i) {
    const double* row = w + i * n;
    __m256d acc = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4)
      acc = _mm256_fmadd_pd(_mm256_loadu_pd(row + j), _mm256_loadu_pd(x + j),
                            acc);
    const __m128d lo = _mm256_castpd256_pd128(acc);
    const __m128d hi = _mm256_extractf128_pd(acc, 1);
    __m128d s2 = _mm_add_pd(lo, hi);
    s2 = _mm_hadd_pd(s2, s2);
    double s = _mm_cvtsd_f64(s2);
    for (; j < n; ++j) s += row[j] * x[j];
    y[i] = (bias ? bias[i] : 0.0) + s;
  }
}

}  // namespace

const Ops& avx2() {
  static const Ops table{
      cmatvec_avx2,     cgemm_nn_avx2, cgemm_nc_acc_avx2,
      apply_gate1_avx2, apply_gate2_avx2, apply_cnot_avx2,
      cdotc_avx2,       rank1_acc_avx2, dgemv_avx2,
  };
  return table;
}

bool avx2_supported() {
#if defined(__GNUC__) || defined(__clang__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

}  // namespace qsteer::kernels

#endif  // QSTEER_HAVE_AVX2
