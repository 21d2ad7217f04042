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

#include "qsteer/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qsteer/kernels.hpp"

namespace qsteer {
namespace {

constexpr cd kI{0.0, 1.0};

std::size_t checked_dim(int n_qubits) {
  if (n_qubits < 1 || n_qubits > 24)
    throw std::invalid_argument("qubit count out of range: " +
                                std::to_string(n_qubits));
  return std::size_t{1} << n_qubits;
}

void check_qubit(int q, int n) {
  if (q < 0 || q >= n)
    throw std::out_of_range("qubit index " + std::to_string(q) +
                            " out of range for " + std::to_string(n) +
                            " qubits");
}

void check_gate_targets(const GateOp& g, int n) {
  check_qubit(g.targets[0], n);
  if (g.arity == 2) {
    check_qubit(g.targets[1], n);
    if (g.targets[0] == g.targets[1])
      throw std::invalid_argument("two-qubit gate targets must be distinct");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// PureState

PureState PureState::zero(int n_qubits) {
  std::vector<cd> a(checked_dim(n_qubits), cd{0.0, 0.0});
  a[0] = cd{1.0, 0.0};
  return PureState(n_qubits, std::move(a));
}

PureState PureState::basis(int n_qubits, std::size_t index) {
  const std::size_t d = checked_dim(n_qubits);
  if (index >= d) throw std::out_of_range("basis index out of range");
  std::vector<cd> a(d, cd{0.0, 0.0});
  a[index] = cd{1.0, 0.0};
  return PureState(n_qubits, std::move(a));
}

PureState PureState::from_amplitudes(int n_qubits, std::vector<cd> amps) {
  if (amps.size() != checked_dim(n_qubits))
    throw std::invalid_argument("amplitude vector length != 2^n");
  PureState s(n_qubits, std::move(amps));
  s.validate();
  return s;
}

double PureState::norm_squared() const {
  double n = 0.0;
  for (const cd& a : amps_) n += std::norm(a);
  return n;
}

void PureState::validate() const {
  if (std::abs(norm_squared() - 1.0) > kValidationTol)
    throw std::invalid_argument("pure state is not normalized");
}

// ---------------------------------------------------------------------------
// MixedState

MixedState MixedState::zero(int n_qubits) {
  const std::size_t d = checked_dim(n_qubits);
  CMatrix r(d, d);
  r(0, 0) = cd{1.0, 0.0};
  return MixedState(n_qubits, std::move(r));
}

MixedState MixedState::from_pure(const PureState& psi) {
  const std::size_t d = psi.dim();
  CMatrix r(d, d);
  const auto& a = psi.amplitudes();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) r(i, j) = a[i] * std::conj(a[j]);
  return MixedState(psi.n_qubits(), std::move(r));
}

MixedState MixedState::from_matrix(int n_qubits, CMatrix rho) {
  const std::size_t d = checked_dim(n_qubits);
  if (rho.rows() != d || rho.cols() != d)
    throw std::invalid_argument("density matrix shape != 2^n x 2^n");
  return MixedState(n_qubits, std::move(rho));
}

double MixedState::trace_real() const { return rho_.trace().real(); }

void MixedState::validate() const {
  if (hermiticity_err() > kValidationTol)
    throw std::invalid_argument("density matrix is not Hermitian");
  if (std::abs(rho_.trace() - cd{1.0, 0.0}) > kValidationTol)
    throw std::invalid_argument("density matrix trace != 1");
  if (!is_positive_semidefinite(rho_, kPsdTol))
    throw std::invalid_argument("density matrix is not PSD");
}

// ---------------------------------------------------------------------------
// Gates

GateOp GateOp::single(int qubit, const std::array<cd, 4>& u) {
  GateOp g;
  g.arity = 1;
  g.targets = {qubit, 0};
  for (int i = 0; i < 4; ++i) g.m[i] = u[i];
  if (g.unitarity_error() > kValidationTol)
    throw std::invalid_argument("gate matrix is not unitary");
  return g;
}

GateOp GateOp::two(int qubit_hi, int qubit_lo, const std::array<cd, 16>& u) {
  GateOp g;
  g.arity = 2;
  g.targets = {qubit_hi, qubit_lo};
  g.m = u;
  if (g.unitarity_error() > kValidationTol)
    throw std::invalid_argument("gate matrix is not unitary");
  return g;
}

GateOp GateOp::x(int q) { return single(q, {cd{0}, cd{1}, cd{1}, cd{0}}); }

GateOp GateOp::y(int q) { return single(q, {cd{0}, -kI, kI, cd{0}}); }

GateOp GateOp::z(int q) { return single(q, {cd{1}, cd{0}, cd{0}, cd{-1}}); }

GateOp GateOp::h(int q) {
  const double s = 1.0 / std::sqrt(2.0);
  return single(q, {cd{s}, cd{s}, cd{s}, cd{-s}});
}

GateOp GateOp::rx(int q, double t) {
  const double c = std::cos(t / 2), s = std::sin(t / 2);
  return single(q, {cd{c}, cd{0, -s}, cd{0, -s}, cd{c}});
}

GateOp GateOp::ry(int q, double t) {
  const double c = std::cos(t / 2), s = std::sin(t / 2);
  return single(q, {cd{c}, cd{-s}, cd{s}, cd{c}});
}

GateOp GateOp::rz(int q, double t) {
  return single(q, {std::exp(-kI * (t / 2)), cd{0}, cd{0},
                    std::exp(kI * (t / 2))});
}

GateOp GateOp::cnot(int control, int target) {
  // Matrix indexed by (control bit, target bit).
  GateOp g = two(control, target,
                 {cd{1}, cd{0}, cd{0}, cd{0},  //
                  cd{0}, cd{1}, cd{0}, cd{0},  //
                  cd{0}, cd{0}, cd{0}, cd{1},  //
                  cd{0}, cd{0}, cd{1}, cd{0}});
  g.fast = Fast::cnot;
  return g;
}

GateOp GateOp::cz(int a, int b) {
  return two(a, b,
             {cd{1}, cd{0}, cd{0}, cd{0},  //
              cd{0}, cd{1}, cd{0}, cd{0},  //
              cd{0}, cd{0}, cd{1}, cd{0},  //
              cd{0}, cd{0}, cd{0}, cd{-1}});
}

namespace {

std::array<cd, 4> rot_zyz(double a, double b, double c) {
  // Rz(c) Ry(b) Rz(a) applied in the order Rz(a) first.
  const cd ea = std::exp(-kI * (a / 2));
  const cd eap = std::exp(kI * (a / 2));
  const cd ec = std::exp(-kI * (c / 2));
  const cd ecp = std::exp(kI * (c / 2));
  const double cb = std::cos(b / 2), sb = std::sin(b / 2);
  return {ec * cb * ea, -ec * sb * eap, ecp * sb * ea, ecp * cb * eap};
}

}  // namespace

GateOp GateOp::crot(int control, int target, double a, double b, double c) {
  const std::array<cd, 4> v = rot_zyz(a, b, c);
  return two(control, target,
             {cd{1}, cd{0}, cd{0}, cd{0},  //
              cd{0}, cd{1}, cd{0}, cd{0},  //
              cd{0}, cd{0}, v[0], v[1],    //
              cd{0}, cd{0}, v[2], v[3]});
}

GateOp GateOp::anti_crot(int control, int target, double a, double b,
                         double c) {
  const std::array<cd, 4> v = rot_zyz(a, b, c);
  return two(control, target,
             {v[0], v[1], cd{0}, cd{0},  //
              v[2], v[3], cd{0}, cd{0},  //
              cd{0}, cd{0}, cd{1}, cd{0},  //
              cd{0}, cd{0}, cd{0}, cd{1}});
}

double GateOp::unitarity_error() const {
  const int d = arity == 1 ? 2 : 4;
  double err = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      cd s{0.0, 0.0};
      for (int k = 0; k < d; ++k) s += m[i * d + k] * std::conj(m[j * d + k]);
      err = std::max(err, std::abs(s - (i == j ? cd{1.0} : cd{0.0})));
    }
  return err;
}

void apply_gate_inplace(PureState& state, const GateOp& g) {
  check_gate_targets(g, state.n_qubits());
  cd* psi = state.amplitudes().data();
  const std::size_t dim = state.dim();
  const auto& k = kernels::active();
  if (g.arity == 1) {
    k.apply_gate1(psi, dim, g.targets[0], g.m.data());
  } else if (g.fast == GateOp::Fast::cnot) {
    k.apply_cnot(psi, dim, g.targets[0], g.targets[1]);
  } else {
    k.apply_gate2(psi, dim, g.targets[0], g.targets[1], g.m.data());
  }
}

void apply_gate_inplace(MixedState& state, const GateOp& g) {
  check_gate_targets(g, state.n_qubits());
  // Row-major rho flattens to index r*d + c, i.e. row qubit k is bit k + n
  // and column qubit k is bit k. U rho U^dagger is U on the row bits
  // followed by conj(U) on the column bits.
  const int n = state.n_qubits();
  cd* flat = state.rho().data();
  const std::size_t dim2 = state.dim() * state.dim();
  const auto& k = kernels::active();
  if (g.arity == 1) {
    std::array<cd, 4> uc;
    for (int i = 0; i < 4; ++i) uc[i] = std::conj(g.m[i]);
    k.apply_gate1(flat, dim2, g.targets[0] + n, g.m.data());
    k.apply_gate1(flat, dim2, g.targets[0], uc.data());
  } else if (g.fast == GateOp::Fast::cnot) {
    k.apply_cnot(flat, dim2, g.targets[0] + n, g.targets[1] + n);
    k.apply_cnot(flat, dim2, g.targets[0], g.targets[1]);
  } else {
    std::array<cd, 16> uc;
    for (int i = 0; i < 16; ++i) uc[i] = std::conj(g.m[i]);
    k.apply_gate2(flat, dim2, g.targets[0] + n, g.targets[1] + n, g.m.data());
    k.apply_gate2(flat, dim2, g.targets[0], g.targets[1], uc.data());
  }
}

PureState apply_gate(PureState state, const GateOp& g) {
  apply_gate_inplace(state, g);
  return state;
}

MixedState apply_gate(MixedState state, const GateOp& g) {
  apply_gate_inplace(state, g);
  return state;
}

// ---------------------------------------------------------------------------
// Tensor products, partial trace, observables

PureState tensor(const PureState& a, const PureState& b) {
  std::vector<cd> out(a.dim() * b.dim());
  for (std::size_t ia = 0; ia < a.dim(); ++ia)
    for (std::size_t ib = 0; ib < b.dim(); ++ib)
      out[ia * b.dim() + ib] = a[ia] * b[ib];
  return PureState::from_amplitudes(a.n_qubits() + b.n_qubits(),
                                    std::move(out));
}

MixedState tensor(const MixedState& a, const MixedState& b) {
  return MixedState::from_matrix(a.n_qubits() + b.n_qubits(),
                                 kron(a.rho(), b.rho()));
}

MixedState partial_trace(const MixedState& rho, const std::vector<int>& keep) {
  if (keep.empty())
    throw std::invalid_argument("partial_trace: keep set must be nonempty");
  const int n = rho.n_qubits();
  std::vector<int> sorted = keep;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    check_qubit(sorted[i], n);
    if (i > 0 && sorted[i] == sorted[i - 1])
      throw std::invalid_argument("partial_trace: duplicate qubit in keep");
  }

  std::vector<int> traced;
  {
    std::size_t ki = 0;
    for (int q = 0; q < n; ++q) {
      if (ki < sorted.size() && sorted[ki] == q)
        ++ki;
      else
        traced.push_back(q);
    }
  }

  const std::size_t dk = std::size_t{1} << sorted.size();
  const std::size_t dt = std::size_t{1} << traced.size();

  auto scatter = [](std::size_t bits, const std::vector<int>& positions) {
    std::size_t out = 0;
    for (std::size_t i = 0; i < positions.size(); ++i)
      if (bits >> i & 1) out |= std::size_t{1} << positions[i];
    return out;
  };

  std::vector<std::size_t> keep_idx(dk), traced_idx(dt);
  for (std::size_t i = 0; i < dk; ++i) keep_idx[i] = scatter(i, sorted);
  for (std::size_t i = 0; i < dt; ++i) traced_idx[i] = scatter(i, traced);

  CMatrix out(dk, dk);
  for (std::size_t r = 0; r < dk; ++r)
    for (std::size_t c = 0; c < dk; ++c) {
      cd s{0.0, 0.0};
      for (std::size_t t = 0; t < dt; ++t)
        s += rho.rho()(keep_idx[r] | traced_idx[t],
                       keep_idx[c] | traced_idx[t]);
      out(r, c) = s;
    }
  return MixedState::from_matrix(static_cast<int>(sorted.size()),
                                 std::move(out));
}

double fidelity_to_pure(const PureState& state, const PureState& target) {
  if (state.n_qubits() != target.n_qubits())
    throw std::invalid_argument("fidelity: qubit count mismatch");
  const cd ov = kernels::active().cdotc(target.amplitudes().data(),
                                        state.amplitudes().data(),
                                        state.dim());
  return std::clamp(std::norm(ov), 0.0, 1.0);
}

double fidelity_to_pure(const MixedState& state, const PureState& target) {
  if (state.n_qubits() != target.n_qubits())
    throw std::invalid_argument("fidelity: qubit count mismatch");
  std::vector<cd> w(state.dim());
  kernels::active().cmatvec(state.rho().data(), target.amplitudes().data(),
                            w.data(), state.dim(), state.dim());
  const cd f = kernels::active().cdotc(target.amplitudes().data(), w.data(),
                                       state.dim());
  return std::clamp(f.real(), 0.0, 1.0);
}

double expectation_z(const PureState& state, int qubit) {
  check_qubit(qubit, state.n_qubits());
  const std::size_t bit = std::size_t{1} << qubit;
  double v = 0.0;
  for (std::size_t i = 0; i < state.dim(); ++i) {
    const double p = std::norm(state[i]);
    v += (i & bit) ? -p : p;
  }
  return v;
}

double expectation_z(const MixedState& state, int qubit) {
  check_qubit(qubit, state.n_qubits());
  const std::size_t bit = std::size_t{1} << qubit;
  double v = 0.0;
  for (std::size_t i = 0; i < state.dim(); ++i) {
    const double p = state.rho()(i, i).real();
    v += (i & bit) ? -p : p;
  }
  return v;
}

}  // namespace qsteer
