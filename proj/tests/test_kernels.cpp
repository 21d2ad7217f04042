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

// Scalar kernels are checked against naive loops written here; every SIMD
// variant compiled into the binary is then equivalence-tested against the
// scalar reference on awkward sizes (tails, stride-1 qubits).

#include <doctest.h>

#include <random>

#include "qsteer/kernels.hpp"

#include "test_util.hpp"

using namespace qsteer;
using qsteer::test::max_cdev;
using qsteer::test::random_cvec;

namespace {

std::vector<const kernels::Ops*> simd_variants() {
  std::vector<const kernels::Ops*> v;
#if defined(QSTEER_HAVE_AVX2)
  if (kernels::avx2_supported()) v.push_back(&kernels::avx2());
#endif
#if defined(QSTEER_HAVE_NEON)
  v.push_back(&kernels::neon());
#endif
  return v;
}

constexpr double kTol = 1e-12;

}  // namespace

TEST_CASE("scalar cgemm_nn matches naive triple loop") {
  std::mt19937_64 rng(11);
  for (auto [m, k, n] :
       {std::array<std::size_t, 3>{1, 1, 1}, {3, 5, 7}, {16, 16, 16},
        {17, 9, 33}}) {
    const auto a = random_cvec(rng, m * k);
    const auto b = random_cvec(rng, k * n);
    std::vector<cd> c(m * n), expected(m * n, cd{0, 0});
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t kk = 0; kk < k; ++kk)
          expected[i * n + j] += a[i * k + kk] * b[kk * n + j];
    kernels::scalar().cgemm_nn(a.data(), b.data(), c.data(), m, k, n);
    CHECK(max_cdev(c, expected) < kTol);
  }
}

TEST_CASE("scalar cgemm_nc_acc matches naive A B^dagger") {
  std::mt19937_64 rng(12);
  const std::size_t m = 6, k = 9, n = 4;
  const auto a = random_cvec(rng, m * k);
  const auto b = random_cvec(rng, n * k);
  auto c = random_cvec(rng, m * n);
  auto expected = c;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t kk = 0; kk < k; ++kk)
        expected[i * n + j] += a[i * k + kk] * std::conj(b[j * k + kk]);
  kernels::scalar().cgemm_nc_acc(a.data(), b.data(), c.data(), m, k, n);
  CHECK(max_cdev(c, expected) < kTol);
}

TEST_CASE("scalar gate kernels match matrix embedding") {
  std::mt19937_64 rng(13);
  // Single-qubit: embed u into the full 2^n unitary by kron with identities
  // and compare against the strided kernel.
  const int nq = 4;
  const std::size_t dim = 1u << nq;
  const auto u = random_cvec(rng, 4);
  for (int bit = 0; bit < nq; ++bit) {
    auto psi = random_cvec(rng, dim);
    auto expected = std::vector<cd>(dim, cd{0, 0});
    for (std::size_t i = 0; i < dim; ++i) {
      const std::size_t b = (i >> bit) & 1;
      for (std::size_t bp = 0; bp < 2; ++bp) {
        const std::size_t j = (i & ~(std::size_t{1} << bit)) | (bp << bit);
        expected[i] += u[b * 2 + bp] * psi[j];
      }
    }
    kernels::scalar().apply_gate1(psi.data(), dim, bit, u.data());
    CHECK(max_cdev(psi, expected) < kTol);
  }
}

TEST_CASE("scalar apply_gate2 matches index arithmetic oracle") {
  std::mt19937_64 rng(14);
  const int nq = 4;
  const std::size_t dim = 1u << nq;
  const auto u = random_cvec(rng, 16);
  for (auto [hi, lo] : {std::pair<int, int>{2, 0}, {0, 2}, {3, 1}, {1, 3},
                        {0, 1}, {3, 2}}) {
    auto psi = random_cvec(rng, dim);
    auto expected = std::vector<cd>(dim, cd{0, 0});
    for (std::size_t i = 0; i < dim; ++i) {
      const std::size_t r = 2 * ((i >> hi) & 1) + ((i >> lo) & 1);
      for (std::size_t c = 0; c < 4; ++c) {
        std::size_t j = i & ~(std::size_t{1} << hi) & ~(std::size_t{1} << lo);
        j |= ((c >> 1) & 1) << hi;
        j |= (c & 1) << lo;
        expected[i] += u[r * 4 + c] * psi[j];
      }
    }
    kernels::scalar().apply_gate2(psi.data(), dim, hi, lo, u.data());
    CHECK(max_cdev(psi, expected) < kTol);
  }
}

TEST_CASE("scalar apply_cnot is the controlled bit flip") {
  std::mt19937_64 rng(15);
  const std::size_t dim = 16;
  for (auto [c, t] : {std::pair<int, int>{0, 1}, {1, 0}, {3, 0}, {2, 3}}) {
    auto psi = random_cvec(rng, dim);
    auto expected(psi);
    for (std::size_t i = 0; i < dim; ++i)
      if ((i >> c) & 1)
        expected[i] = psi[i ^ (std::size_t{1} << t)];
    kernels::scalar().apply_cnot(psi.data(), dim, c, t);
    CHECK(max_cdev(psi, expected) == 0.0);
  }
}

TEST_CASE("every compiled SIMD variant matches the scalar reference") {
  const auto variants = simd_variants();
  if (variants.empty()) return;

  std::mt19937_64 rng(16);
  for (const kernels::Ops* ops : variants) {
    // cmatvec / cgemm_nn / cgemm_nc_acc on tail-heavy sizes
    for (auto [m, k, n] :
         {std::array<std::size_t, 3>{1, 1, 1}, {2, 3, 2}, {5, 7, 3},
          {8, 8, 8}, {13, 1, 17}, {32, 33, 31}}) {
      const auto a = random_cvec(rng, m * k);
      const auto b = random_cvec(rng, k * n);
      const auto bt = random_cvec(rng, n * k);
      const auto x = random_cvec(rng, k);

      std::vector<cd> c0(m * n), c1(m * n);
      kernels::scalar().cgemm_nn(a.data(), b.data(), c0.data(), m, k, n);
      ops->cgemm_nn(a.data(), b.data(), c1.data(), m, k, n);
      CHECK(max_cdev(c0, c1) < kTol);

      auto acc0 = random_cvec(rng, m * n);
      auto acc1 = acc0;
      kernels::scalar().cgemm_nc_acc(a.data(), bt.data(), acc0.data(), m, k,
                                     n);
      ops->cgemm_nc_acc(a.data(), bt.data(), acc1.data(), m, k, n);
      CHECK(max_cdev(acc0, acc1) < kTol);

      std::vector<cd> y0(m), y1(m);
      kernels::scalar().cmatvec(a.data(), x.data(), y0.data(), m, k);
      ops->cmatvec(a.data(), x.data(), y1.data(), m, k);
      CHECK(max_cdev(y0, y1) < kTol);
    }

    // dot products, rank-1 updates
    for (std::size_t n : {1u, 2u, 3u, 7u, 64u, 129u}) {
      const auto x = random_cvec(rng, n);
      const auto y = random_cvec(rng, n);
      CHECK(std::abs(kernels::scalar().cdotc(x.data(), y.data(), n) -
                     ops->cdotc(x.data(), y.data(), n)) < kTol);

      const std::size_t m = 5;
      const auto u = random_cvec(rng, m);
      auto a0 = random_cvec(rng, m * n);
      auto a1 = a0;
      const cd alpha{-0.7, 0.4};
      kernels::scalar().rank1_acc(a0.data(), alpha, u.data(), y.data(), m, n);
      ops->rank1_acc(a1.data(), alpha, u.data(), y.data(), m, n);
      CHECK(max_cdev(a0, a1) < kTol);
    }

    // gate kernels across all stride patterns, including bit 0
    for (int nq : {1, 2, 3, 5}) {
      const std::size_t dim = std::size_t{1} << nq;
      const auto u1 = random_cvec(rng, 4);
      for (int bit = 0; bit < nq; ++bit) {
        auto p0 = random_cvec(rng, dim);
        auto p1 = p0;
        kernels::scalar().apply_gate1(p0.data(), dim, bit, u1.data());
        ops->apply_gate1(p1.data(), dim, bit, u1.data());
        CHECK(max_cdev(p0, p1) < kTol);
      }
      if (nq < 2) continue;
      const auto u2 = random_cvec(rng, 16);
      for (int hi = 0; hi < nq; ++hi)
        for (int lo = 0; lo < nq; ++lo) {
          if (hi == lo) continue;
          auto p0 = random_cvec(rng, dim);
          auto p1 = p0;
          kernels::scalar().apply_gate2(p0.data(), dim, hi, lo, u2.data());
          ops->apply_gate2(p1.data(), dim, hi, lo, u2.data());
          CHECK(max_cdev(p0, p1) < kTol);
          auto q0 = random_cvec(rng, dim);
          auto q1 = q0;
          kernels::scalar().apply_cnot(q0.data(), dim, hi, lo);
          ops->apply_cnot(q1.data(), dim, hi, lo);
          CHECK(max_cdev(q0, q1) == 0.0);
        }
    }

    // real matvec
    std::uniform_real_distribution<double> d(-1, 1);
    for (std::size_t n : {1u, 3u, 4u, 5u, 64u, 785u}) {
      const std::size_t m = 7;
      std::vector<double> w(m * n), x(n), bias(m), y0(m), y1(m);
      for (auto& v : w) v = d(rng);
      for (auto& v : x) v = d(rng);
      for (auto& v : bias) v = d(rng);
      kernels::scalar().dgemv(w.data(), x.data(), bias.data(), y0.data(), m,
                              n);
      ops->dgemv(w.data(), x.data(), bias.data(), y1.data(), m, n);
      for (std::size_t i = 0; i < m; ++i)
        CHECK(std::abs(y0[i] - y1[i]) < kTol);
    }
  }
}

TEST_CASE("dispatch override honors QSTEER_SIMD contract") {
  const auto name = kernels::active_name();
  CHECK(kernels::set_active("scalar"));
  CHECK(kernels::active_name() == "scalar");
  CHECK_FALSE(kernels::set_active("not-a-variant"));
  CHECK(kernels::active_name() == "scalar");
  CHECK(kernels::set_active(name));  // restore
}
