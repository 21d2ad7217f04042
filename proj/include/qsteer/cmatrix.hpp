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
/// Small dense complex matrices (row-major) used for operators, Kraus maps
/// and test oracles. Heavy products go through the kernel dispatch table.

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace qsteer {

using cd = std::complex<double>;

class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, cd{0.0, 0.0}) {}

  static CMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  cd& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const cd& operator()(std::size_t i, std::size_t j) const {
    return a_[i * cols_ + j];
  }

  cd* data() { return a_.data(); }
  const cd* data() const { return a_.data(); }
  const std::vector<cd>& values() const { return a_; }

  CMatrix adjoint() const;
  CMatrix conj() const;
  cd trace() const;

  CMatrix& operator+=(const CMatrix& o);
  CMatrix& operator-=(const CMatrix& o);
  CMatrix& operator*=(cd s);

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(CMatrix a, cd s) { return a *= s; }
  friend CMatrix operator*(cd s, CMatrix a) { return a *= s; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cd> a_;
};

/// C = A B through the active kernel.
CMatrix matmul(const CMatrix& a, const CMatrix& b);

/// C = A B^dagger through the active kernel.
CMatrix matmul_adjoint_right(const CMatrix& a, const CMatrix& b);

/// Kronecker product; `a` occupies the high index bits of the result.
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// max_ij |a_ij - b_ij|
double max_abs_diff(const CMatrix& a, const CMatrix& b);

/// max_ij |a_ij - a_ji^*|
double hermiticity_error(const CMatrix& a);

/// exp(A) for a square matrix via scaling-and-squaring of the Taylor series.
/// Intended for the small anti-Hermitian generators used here (norm <= a few).
CMatrix expm(const CMatrix& a);

/// True if A + shift*I admits a Cholesky factorization, i.e. all eigenvalues
/// of the Hermitian matrix A are > -shift up to roundoff.
bool is_positive_semidefinite(const CMatrix& a, double shift);

}  // namespace qsteer
