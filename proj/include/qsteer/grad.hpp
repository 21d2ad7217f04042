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
/// Losses, parameter gradients, input-pixel gradients and the Adam training
/// loop. Training always runs against the undefended encoder; the steering
/// defense is an inference-time replacement.
///
/// Circuit angles differentiate by the parameter-shift rule (+-pi/2 for
/// plain rotations, the four-term rule for the controlled rotations in QCNN
/// pooling); head weights by analytic backprop. Input gradients default to
/// central finite differences (h = 1e-3 on the pixel scale); an adjoint
/// statevector path is available for the amplitude-encoded models and agrees
/// with the differences to O(h^2).

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qsteer/models.hpp"

namespace qsteer {

struct TrainConfig {
  double lr = 0.01;
  int epochs = 15;
  int batch_size = 32;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double adam_eps = 1e-8;
  std::uint64_t seed = 0;
  int threads = 1;

  void validate() const;
};

struct EpochStats {
  int epoch = 0;
  double loss = 0.0;
  double train_acc = 0.0;
  double test_acc = 0.0;
};

struct TrainResult {
  ParamSet params;
  std::vector<EpochStats> curve;
};

/// -log softmax(logits)[label], in nats.
double loss(const Logits& logits, int label);

/// softmax(logits) - onehot(label).
std::vector<double> loss_grad_logits(const Logits& logits, int label);

/// d loss / d theta averaged over the batch. Images are in model-input
/// space (28x28 for qnn, 16x16 for qcnn/vqc).
std::vector<double> param_grad(const ModelSpec& spec, const ParamSet& params,
                               std::span<const Image> images,
                               std::span<const int> labels, int threads = 1);

enum class GradMethod { finite_difference, adjoint };

inline constexpr double kInputGradStep = 1e-3;

/// d loss / d pixel for the white-box attack setting (undefended encoder).
/// qnn always uses patch-cached central differences (non-overlapping patches
/// make that exact); qcnn/vqc honor `method`.
Image input_grad(const ModelSpec& spec, const ParamSet& params,
                 const EncoderSpec& enc, const Image& img, int label,
                 GradMethod method = GradMethod::finite_difference,
                 double h = kInputGradStep);

/// Adam. Deterministic given config.seed; per-epoch stats are recorded and
/// a NaN loss aborts with NumericError.
TrainResult train(const ModelSpec& spec, const ImageSet& train_set,
                  const ImageSet& test_set, const TrainConfig& config);

/// Accuracy of spec/params over the set under the given encoder (spec-kind
/// input sizes). Predictions are written per sample when `predictions` is
/// non-null.
double accuracy(const ModelSpec& spec, const ParamSet& params,
                const ImageSet& set, const EncoderSpec& enc, int threads = 1,
                std::vector<int>* predictions = nullptr);

}  // namespace qsteer
