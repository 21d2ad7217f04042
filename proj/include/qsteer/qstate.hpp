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
/// Pure and mixed quantum states over n qubits, with gate application,
/// tensor products, partial trace, fidelity and Z expectations.
///
/// Index convention: qubit 0 is the least significant bit of the basis-state
/// index. tensor(a, b) places a's qubits above b's, so an ancilla tensored
/// on the left occupies the most significant position. Both conventions are
/// fixed project-wide.

#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "qsteer/cmatrix.hpp"
#include "qsteer/tolerances.hpp"

namespace qsteer {

class PureState {
 public:
  /// |0...0> over n qubits.
  static PureState zero(int n_qubits);
  /// Computational basis state |index>.
  static PureState basis(int n_qubits, std::size_t index);
  /// Validates length 2^n and unit norm (within kValidationTol).
  static PureState from_amplitudes(int n_qubits, std::vector<cd> amplitudes);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  const std::vector<cd>& amplitudes() const { return amps_; }
  std::vector<cd>& amplitudes() { return amps_; }
  const cd& operator[](std::size_t i) const { return amps_[i]; }

  double norm_squared() const;
  /// Throws std::invalid_argument if the unit-norm invariant is violated.
  void validate() const;

 private:
  PureState(int n, std::vector<cd> a) : n_qubits_(n), amps_(std::move(a)) {}
  int n_qubits_ = 0;
  std::vector<cd> amps_;
};

class MixedState {
 public:
  /// |0...0><0...0|
  static MixedState zero(int n_qubits);
  static MixedState from_pure(const PureState& psi);
  /// Validates shape only; call validate() for the physical invariants.
  static MixedState from_matrix(int n_qubits, CMatrix rho);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return rho_.rows(); }
  const CMatrix& rho() const { return rho_; }
  CMatrix& rho() { return rho_; }

  double trace_real() const;
  double hermiticity_err() const { return hermiticity_error(rho_); }
  /// Hermitian within kValidationTol, unit trace within kValidationTol,
  /// eigenvalues >= -kPsdTol. Throws std::invalid_argument on violation.
  void validate() const;

 private:
  MixedState(int n, CMatrix r) : n_qubits_(n), rho_(std::move(r)) {}
  int n_qubits_ = 0;
  CMatrix rho_;
};

/// A 1- or 2-qubit unitary bound to target qubit indices. For two-qubit
/// gates the 4x4 matrix is indexed by 2*b(targets[0]) + b(targets[1]).
struct GateOp {
  int arity = 1;
  std::array<int, 2> targets{0, 0};
  std::array<cd, 16> m{};  // first 4 entries used when arity == 1
  enum class Fast { none, cnot } fast = Fast::none;

  static GateOp single(int qubit, const std::array<cd, 4>& u);
  static GateOp two(int qubit_hi, int qubit_lo, const std::array<cd, 16>& u);

  static GateOp x(int q);
  static GateOp y(int q);
  static GateOp z(int q);
  static GateOp h(int q);
  static GateOp rx(int q, double theta);
  static GateOp ry(int q, double theta);
  static GateOp rz(int q, double theta);
  static GateOp cnot(int control, int target);
  static GateOp cz(int a, int b);
  /// Controlled Rz(a) Ry(b) Rz(c) on `target`, conditioned on `control`.
  static GateOp crot(int control, int target, double a, double b, double c);
  /// Same but conditioned on control = |0>.
  static GateOp anti_crot(int control, int target, double a, double b,
                          double c);

  /// max |U U^dagger - I|
  double unitarity_error() const;
};

/// In-place application (the hot path).
void apply_gate_inplace(PureState& state, const GateOp& g);
void apply_gate_inplace(MixedState& state, const GateOp& g);

/// Value-returning application.
PureState apply_gate(PureState state, const GateOp& g);
MixedState apply_gate(MixedState state, const GateOp& g);

/// Tensor product; `a` takes the high bits (qubit indices shift up by
/// b.n_qubits()).
PureState tensor(const PureState& a, const PureState& b);
MixedState tensor(const MixedState& a, const MixedState& b);

/// Trace out all qubits not in `keep`. Kept qubits are reindexed in
/// ascending order of their original index.
MixedState partial_trace(const MixedState& rho, const std::vector<int>& keep);

/// <target|rho|target> resp. |<target|psi>|^2, clamped to [0,1].
double fidelity_to_pure(const PureState& state, const PureState& target);
double fidelity_to_pure(const MixedState& state, const PureState& target);

/// Tr(rho Z_qubit) resp. <psi|Z_qubit|psi>.
double expectation_z(const PureState& state, int qubit);
double expectation_z(const MixedState& state, int qubit);

}  // namespace qsteer
