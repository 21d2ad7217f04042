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
/// White-box FGSM and PGD against the undefended model.
///
///   FGSM: x_adv = clip_[0,1](x + eps * sign(grad)),  sign(0) = 0.
///   PGD:  x^{t+1} = clip_[0,1](Pi_{B_eps(x)}(x^t + alpha * sign(grad))),
///         starting from the clean image, per-step order add -> project ->
///         clip. PGD with steps = 1 and alpha = eps is bitwise FGSM.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qsteer/grad.hpp"

namespace qsteer {

enum class AttackKind { fgsm, pgd };

std::string to_string(AttackKind k);
AttackKind attack_kind_from_string(const std::string& s);

struct AttackSpec {
  AttackKind kind = AttackKind::fgsm;
  double epsilon = 0.0;  // L-inf budget on the pixel scale, >= 0
  double alpha = 0.02;   // PGD step size (paper default)
  int steps = 20;        // PGD iterations (paper default)

  void validate() const;
};

Image fgsm(const ModelSpec& spec, const ParamSet& params, const Image& img,
           int label, double eps,
           GradMethod method = GradMethod::finite_difference);

Image pgd(const ModelSpec& spec, const ParamSet& params, const Image& img,
          int label, const AttackSpec& attack,
          GradMethod method = GradMethod::finite_difference);

/// Dispatches on attack.kind.
Image attack_image(const ModelSpec& spec, const ParamSet& params,
                   const Image& img, int label, const AttackSpec& attack,
                   GradMethod method = GradMethod::finite_difference);

/// Adversarial counterpart of every image in the set (labels preserved).
ImageSet attack_set(const ModelSpec& spec, const ParamSet& params,
                    const ImageSet& set, const AttackSpec& attack,
                    GradMethod method = GradMethod::finite_difference,
                    int threads = 1);

struct AttackCurvePoint {
  double epsilon = 0.0;
  double acc_undefended = 0.0;
  double acc_defended = 0.0;
};

/// For each eps: generate the adversarial set once on the undefended model,
/// then evaluate it under undefended and defended inference.
std::vector<AttackCurvePoint> attack_curve(
    const ModelSpec& spec, const ParamSet& params, const ImageSet& set,
    AttackSpec attack, const std::vector<double>& epsilons,
    const EncoderSpec& defended_encoder,
    GradMethod method = GradMethod::finite_difference, int threads = 1);

/// Binary tensor file (magic "QSTT", float64 little-endian) plus a JSON
/// sidecar carrying the attack spec, model hash and seed.
void save_adversarial_set(const ImageSet& set, const AttackSpec& attack,
                          std::uint64_t model_hash, std::uint64_t seed,
                          const std::string& path_prefix);
ImageSet load_adversarial_set(const std::string& path_prefix);

}  // namespace qsteer
