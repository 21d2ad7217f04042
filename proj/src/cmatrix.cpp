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

#include "qsteer/cmatrix.hpp"

#include <cmath>
#include <stdexcept>

#include "qsteer/kernels.hpp"

namespace qsteer {

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = cd{1.0, 0.0};
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      m(j, i) = std::conj((*this)(i, j));
  return m;
}

CMatrix CMatrix::conj() const {
  CMatrix m(rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] = std::conj(a_[i]);
  return m;
}

cd CMatrix::trace() const {
  cd t{0.0, 0.0};
  for (std::size_t i = 0; i < rows_ && i < cols_; ++i) t += (*this)(i, i);
  return t;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw std::invalid_argument("CMatrix: shape mismatch in +=");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw std::invalid_argument("CMatrix: shape mismatch in -=");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
  return *this;
}

CMatrix& CMatrix::operator*=(cd s) {
  for (auto& v : a_) v *= s;
  return *this;
}

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows())
    throw std::invalid_argument("matmul: inner dimension mismatch");
  CMatrix c(a.rows(), b.cols());
  kernels::active().cgemm_nn(a.data(), b.data(), c.data(), a.rows(), a.cols(),
                             b.cols());
  return c;
}

CMatrix matmul_adjoint_right(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.cols())
    throw std::invalid_argument("matmul_adjoint_right: dimension mismatch");
  CMatrix c(a.rows(), b.rows());
  kernels::active().cgemm_nc_acc(a.data(), b.data(), c.data(), a.rows(),
                                 a.cols(), b.rows());
  return c;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cd aij = a(i, j);
      for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t s = 0; s < b.cols(); ++s)
          m(i * b.rows() + r, j * b.cols() + s) = aij * b(r, s);
    }
  return m;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("max_abs_diff: shape mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i)
    m = std::max(m, std::abs(a.values()[i] - b.values()[i]));
  return m;
}

double hermiticity_error(const CMatrix& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      m = std::max(m, std::abs(a(i, j) - std::conj(a(j, i))));
  return m;
}

CMatrix expm(const CMatrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("expm: not square");
  const std::size_t n = a.rows();

  double norm_inf = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) row += std::abs(a(i, j));
    norm_inf = std::max(norm_inf, row);
  }

  int squarings = 0;
  double scale = 1.0;
  while (norm_inf * scale > 0.5) {
    scale *= 0.5;
    ++squarings;
  }

  CMatrix x = a;
  x *= cd{scale, 0.0};

  // Taylor series of the scaled matrix; terms decay at least as 0.5^k / k!.
  CMatrix result = CMatrix::identity(n);
  CMatrix term = CMatrix::identity(n);
  for (int k = 1; k <= 24; ++k) {
    term = matmul(term, x);
    term *= cd{1.0 / k, 0.0};
    result += term;
    double tmax = 0.0;
    for (const cd& v : term.values()) tmax = std::max(tmax, std::abs(v));
    if (tmax < 1e-300) break;
  }
  for (int s = 0; s < squarings; ++s) result = matmul(result, result);
  return result;
}

bool is_positive_semidefinite(const CMatrix& a, double shift) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("is_positive_semidefinite: not square");
  const std::size_t n = a.rows();
  CMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double d = a(j, j).real() + shift;
    for (std::size_t k = 0; k < j; ++k) d -= std::norm(l(j, k));
    if (!(d > 0.0)) return false;
    const double ljj = std::sqrt(d);
    l(j, j) = cd{ljj, 0.0};
    for (std::size_t i = j + 1; i < n; ++i) {
      cd v = a(i, j);
      for (std::size_t k = 0; k < j; ++k)
        v -= l(i, k) * std::conj(l(j, k));
      l(i, j) = v / ljj;
    }
  }
  return true;
}

}  // namespace qsteer
