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
/// The three desk-scale classifiers.
///
/// qnn:  2x2 quanvolution over a 28x28 image through a frozen seeded random
///       4-qubit circuit (4 Z-expectation channels at 14x14 positions),
///       followed by a trainable dense head 784 -> 64 (tanh) -> 10.
/// qcnn: 8 qubits, amplitude-encoded 16x16 input, three conv+pool stages of
///       3-angle two-qubit blocks (48 conv + 24 pool = 72 parameters),
///       readout <Z> on qubit 7, logits (-z, +z).
/// vqc:  8 qubits, amplitude-encoded 16x16 input, three strongly entangling
///       layers (per-qubit Rz Ry Rz + CNOT ring, 72 parameters), readout
///       <Z> on qubit 7, logits (-z, +z).
///
/// Every forward accepts pure or mixed encoded states; the two paths agree
/// on rank-1 inputs.

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qsteer/data.hpp"
#include "qsteer/encoding.hpp"

namespace qsteer {

enum class ModelKind { qnn, qcnn, vqc };

std::string to_string(ModelKind k);
ModelKind model_kind_from_string(const std::string& s);

struct ModelSpec {
  ModelKind kind = ModelKind::vqc;
  int n_qubits = 8;     // qnn: kernel qubits (4)
  int layers = 3;       // vqc layers / qcnn stages / qnn kernel layers
  int head_hidden = 0;  // qnn only
  int classes = 2;
  std::uint64_t seed = 0;  // fixes the frozen quanvolution kernel circuit

  static ModelSpec qnn(std::uint64_t seed);
  static ModelSpec qcnn(std::uint64_t seed);
  static ModelSpec vqc(std::uint64_t seed);

  void validate() const;
  std::size_t circuit_param_count() const;  // qcnn/vqc: 72, qnn: 0
  std::size_t head_param_count() const;     // qnn: 50890, else 0
  std::size_t param_count() const;
  int input_side() const;  // qnn: 28, qcnn/vqc: 16
  EncodingKind encoding_kind() const;
};

struct ParamSet {
  std::vector<double> theta;  // circuit parameters first, then head weights
  std::size_t circuit_count = 0;
  std::size_t head_count = 0;

  static ParamSet zeros(const ModelSpec& spec);
  /// Seeded init: circuit angles uniform in [0, 2pi), head weights scaled
  /// normal (Glorot-style), biases zero.
  static ParamSet init(const ModelSpec& spec, std::uint64_t seed);

  std::span<const double> circuit() const {
    return {theta.data(), circuit_count};
  }
  std::span<const double> head() const {
    return {theta.data() + circuit_count, head_count};
  }

  std::string to_json(const ModelSpec& spec) const;
  static std::pair<ModelSpec, ParamSet> from_json(const std::string& text);
};

struct Logits {
  std::vector<double> values;
};

// --- circuit builders ------------------------------------------------------

/// Frozen random quanvolution kernel: `layers` rounds of seeded single-qubit
/// rotations (random axis, random angle) plus a CNOT ring on 4 qubits.
std::vector<GateOp> quanv_kernel_circuit(std::uint64_t seed, int layers);

/// 72-parameter QCNN: conv rings over active qubits [0..7] -> [1,3,5,7] ->
/// [3,7] (8+4+4 blocks, Ry/Ry/CNOT/Ry each) interleaved with controlled-
/// rotation pooling (4+2+2 blocks); the final pool pairs a controlled with
/// an anti-controlled rotation. Readout qubit 7.
std::vector<GateOp> qcnn_circuit(std::span<const double> theta);

/// True for the pooling (controlled-rotation) parameter slots, which need
/// the four-term shift rule instead of the two-term one.
bool qcnn_param_is_pool(std::size_t index);

/// 72-parameter VQC: 3 x (per-qubit Rz Ry Rz + CNOT ring).
std::vector<GateOp> vqc_circuit(std::span<const double> theta);

// --- forward passes --------------------------------------------------------

/// Applies `gates` to a copy of the state and returns <Z_qubit>.
double z_readout(const EncodedState& in, std::span<const GateOp> gates,
                 int qubit);

struct FeatureMaps {
  std::array<std::vector<double>, 4> ch;  // 4 channels, each 14x14 row-major

  /// Head input ordering: index = channel*196 + row*14 + col.
  std::vector<double> flatten() const;
};

/// The four channel values of one 2x2 patch (features ordered row-major
/// within the patch), optionally steered per `enc`.
std::array<double, 4> quanv_patch_channels(const std::array<double, 4>& patch,
                                           std::span<const GateOp> kernel,
                                           const EncoderSpec& enc);

FeatureMaps quanv_forward(const Image& img, const ModelSpec& spec,
                          const EncoderSpec& enc);

Logits qnn_head_forward(const FeatureMaps& maps, std::span<const double> head,
                        const ModelSpec& spec);

Logits qcnn_forward(const EncodedState& state, std::span<const double> theta);
Logits vqc_forward(const EncodedState& state, std::span<const double> theta);

/// image (+ encoder) -> logits for any model kind. For qnn the encoder is
/// applied per patch; for qcnn/vqc it encodes the flattened 16x16 image.
Logits model_forward(const ModelSpec& spec, const ParamSet& params,
                     const Image& img, const EncoderSpec& enc);

int predict(const Logits& l);

}  // namespace qsteer
