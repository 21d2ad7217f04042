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
/// Measurement-induced passive steering toward a target pure state.
///
/// One round couples the system to a fresh |0> ancilla through
/// U = exp(-i J H) with H = sigma+_A (x) L + sigma-_A (x) L^dagger and jump
/// operator L = |tau><e|, measures the ancilla non-selectively and resets
/// it. |tau> is the target and |e> the normalized component of the initial
/// state orthogonal to the target, so steering acts inside span{initial,
/// target}. Tracing out the ancilla reduces the round to two Kraus
/// operators
///
///     K0 = I - (1 - cos J) |e><e|,    K1 = -i sin J |tau><e|,
///
/// which gives the closed-form fidelity recursion F' = F + sin^2(J) (1 - F)
/// and after N rounds F_N = 1 - (1 - F_0) cos^{2N}(J).
///
/// Two routes produce the same channel: `steer` applies the Kraus pair and
/// `steer_dilated` simulates the explicit ancilla + dense exp(-iJH) + partial
/// trace. They must agree entrywise within kEquivalenceTol; the dilated path
/// is the oracle for the reduction.

#pragma once

#include <optional>
#include <vector>

#include "qsteer/qstate.hpp"

namespace qsteer {

enum class SteeringMode { single_qubit, multi_qubit };

struct SteeringPlan {
  double strength = 0.0;  // J, radians, in (0, pi/2]
  int rounds = 1;         // N >= 1
  SteeringMode mode = SteeringMode::multi_qubit;
  PureState target;

  SteeringPlan(double j, int n, SteeringMode m, PureState tau)
      : strength(j), rounds(n), mode(m), target(std::move(tau)) {
    validate();
  }

  /// Throws std::invalid_argument unless 0 < J <= pi/2 and N >= 1.
  void validate() const;
};

/// The reduced one-round channel rho -> sum_i K_i rho K_i^dagger.
class SteeringChannel {
 public:
  /// Identity channel (single Kraus operator I).
  static SteeringChannel identity(std::size_t dim);
  /// The two-operator steering channel for source direction e and target tau.
  static SteeringChannel steering(double strength, std::vector<cd> source,
                                  std::vector<cd> target);

  const std::vector<CMatrix>& kraus() const { return kraus_; }
  bool is_identity() const { return !rank_form_.has_value(); }
  std::size_t dim() const { return dim_; }

  /// sum_i K_i^dagger K_i deviation from I (trace preservation).
  double completeness_error() const;

  /// Applies one round. Uses the rank-structured fast path (one matvec plus
  /// rank-1 updates, O(d^2)).
  MixedState apply(const MixedState& rho) const;

  /// Applies one round through the generic dense Kraus sum, O(d^3).
  /// Reference implementation for the fast path.
  MixedState apply_dense(const MixedState& rho) const;

 private:
  struct RankForm {
    double strength;
    std::vector<cd> source;  // |e>
    std::vector<cd> target;  // |tau>
  };

  std::size_t dim_ = 0;
  std::optional<RankForm> rank_form_;
  std::vector<CMatrix> kraus_;
};

/// Builds the one-round channel steering `initial` toward plan.target.
/// Returns the identity channel when the initial fidelity exceeds
/// 1 - kEquivalenceTol (no orthogonal component left to steer).
SteeringChannel build_channel(const SteeringPlan& plan,
                              const PureState& initial);

/// Applies the one-round channel plan.rounds times to |initial><initial|.
MixedState steer(const SteeringPlan& plan, const PureState& initial);

/// Same protocol through explicit dilation: tensor a |0><0| ancilla on top,
/// apply U = exp(-i J H) built by dense matrix exponential, trace out the
/// ancilla; repeat. Oracle for `steer`.
MixedState steer_dilated(const SteeringPlan& plan, const PureState& initial);

/// 1 - (1 - f0) cos^{2N}(J); valid for f0 in [0,1], rounds >= 0.
double fidelity_oracle(double f0, double strength, int rounds);

/// The joint ancilla+system steering unitary exp(-i J H) as a dense matrix,
/// built by matrix exponential of the explicit H (test surface).
CMatrix steering_unitary(double strength, const std::vector<cd>& source,
                         const std::vector<cd>& target);

}  // namespace qsteer
