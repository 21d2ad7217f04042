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
/// Classical-to-quantum feature maps and their steered (defended) variants.
///
/// Angle encoding: |phi(x)> = prod_i Ry(x_i)|0>, one qubit per feature,
/// angles in [0, pi]. Pixels in [0,1] map to angles as x*pi.
/// Amplitude encoding: |phi(x)> = sum_i (x_i/||x||) |i>, 2^n features.
///
/// Defended variants stop a steering channel after N rounds instead of
/// preparing the exact encoded state:
///   - single_qubit_steer: one independent channel per qubit, |0> toward
///     Ry(x_i)|0> (angle encoding only);
///   - multi_qubit_steer: one channel on the whole register, |0...0> toward
///     the full encoded state.

#pragma once

#include <variant>
#include <vector>

#include "qsteer/steering.hpp"

namespace qsteer {

struct FeatureVector {
  enum class Scale { pixels01, angles };

  std::vector<double> values;
  Scale scale = Scale::pixels01;

  /// Pixels in [0,1] scaled by pi; throws on out-of-range input.
  static FeatureVector angles_from_pixels(const std::vector<double>& pixels);
  static FeatureVector angles(std::vector<double> v);
  static FeatureVector pixels(std::vector<double> v);
};

enum class EncodingKind { angle, amplitude };
enum class DefenseMode { none, single_qubit_steer, multi_qubit_steer };

struct EncoderSpec {
  EncodingKind kind = EncodingKind::angle;
  DefenseMode defense = DefenseMode::none;
  double strength = 0.0;  // J, required for steered variants
  int rounds = 0;         // N, required for steered variants

  static EncoderSpec plain(EncodingKind k);
  static EncoderSpec steered(EncodingKind k, DefenseMode d, double j, int n);

  bool defended() const { return defense != DefenseMode::none; }
  /// single_qubit_steer is only valid with angle encoding; steered variants
  /// need J in (0, pi/2] and N >= 1.
  void validate() const;
};

/// Pure or mixed encoder output; defended encoders produce mixed states.
using EncodedState = std::variant<PureState, MixedState>;

/// x must hold `n` angles in [0, pi].
PureState angle_encode(const FeatureVector& x, int n_qubits);

/// x must hold 2^n entries, not all zero. Amplitudes are x / ||x||_2.
PureState amplitude_encode(const FeatureVector& x, int n_qubits);

/// Dispatches on spec.kind / spec.defense. Undefended output is the pure
/// encoded state; defended output is the steered MixedState.
EncodedState encode(const FeatureVector& x, int n_qubits,
                    const EncoderSpec& spec);

/// The computational-basis intensity profile diag(rho), rescaled so the
/// maximum entry is 1 (all-zero diagonal stays zero). Visualizes a partially
/// steered amplitude-encoded image.
std::vector<double> steered_intensity_image(const MixedState& rho);

int n_qubits_of(const EncodedState& s);
double fidelity_to_pure(const EncodedState& s, const PureState& target);

}  // namespace qsteer
