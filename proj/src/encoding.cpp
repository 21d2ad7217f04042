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

#include "qsteer/encoding.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qsteer {
namespace {

constexpr double kPi = std::numbers::pi;

bool is_power_of_two(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

// Angles live in [0, pi]; a slack of one finite-difference step is allowed
// so input-gradient probes at the pixel-range boundary stay valid.
constexpr double kRangeSlack = 1e-2;

void require_angles(const FeatureVector& x) {
  if (x.scale != FeatureVector::Scale::angles)
    throw std::invalid_argument("feature vector is not angle-scaled");
  for (double v : x.values) {
    if (!std::isfinite(v) || v < -kRangeSlack * kPi ||
        v > kPi * (1.0 + kRangeSlack))
      throw std::invalid_argument("angle feature outside [0, pi]: " +
                                  std::to_string(v));
  }
}

}  // namespace

FeatureVector FeatureVector::angles_from_pixels(
    const std::vector<double>& pixels) {
  std::vector<double> a(pixels.size());
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    if (!std::isfinite(pixels[i]) || pixels[i] < -kRangeSlack ||
        pixels[i] > 1.0 + kRangeSlack)
      throw std::invalid_argument("pixel outside [0,1]");
    a[i] = pixels[i] * kPi;
  }
  return {std::move(a), Scale::angles};
}

FeatureVector FeatureVector::angles(std::vector<double> v) {
  return {std::move(v), Scale::angles};
}

FeatureVector FeatureVector::pixels(std::vector<double> v) {
  return {std::move(v), Scale::pixels01};
}

EncoderSpec EncoderSpec::plain(EncodingKind k) {
  return {k, DefenseMode::none, 0.0, 0};
}

EncoderSpec EncoderSpec::steered(EncodingKind k, DefenseMode d, double j,
                                 int n) {
  EncoderSpec s{k, d, j, n};
  s.validate();
  return s;
}

void EncoderSpec::validate() const {
  if (defense == DefenseMode::single_qubit_steer &&
      kind != EncodingKind::angle)
    throw std::invalid_argument(
        "single-qubit steering requires angle encoding");
  if (defended()) {
    if (!(strength > 0.0) || strength > kPi / 2 + 1e-15)
      throw std::invalid_argument("steered encoder needs J in (0, pi/2]");
    if (rounds < 1)
      throw std::invalid_argument("steered encoder needs N >= 1");
  }
}

PureState angle_encode(const FeatureVector& x, int n_qubits) {
  require_angles(x);
  if (static_cast<int>(x.values.size()) != n_qubits)
    throw std::invalid_argument("angle_encode: feature count != qubit count");
  // Product state: amplitude of basis index b is
  // prod_i (bit i of b ? sin(x_i/2) : cos(x_i/2)).
  std::vector<cd> amps(std::size_t{1} << n_qubits, cd{1.0, 0.0});
  for (int q = 0; q < n_qubits; ++q) {
    const double c = std::cos(x.values[q] / 2);
    const double s = std::sin(x.values[q] / 2);
    const std::size_t bit = std::size_t{1} << q;
    for (std::size_t i = 0; i < amps.size(); ++i)
      amps[i] *= (i & bit) ? s : c;
  }
  return PureState::from_amplitudes(n_qubits, std::move(amps));
}

PureState amplitude_encode(const FeatureVector& x, int n_qubits) {
  const std::size_t len = x.values.size();
  if (!is_power_of_two(len))
    throw std::invalid_argument(
        "amplitude_encode: feature count is not a power of two");
  if (len != (std::size_t{1} << n_qubits))
    throw std::invalid_argument("amplitude_encode: feature count != 2^n");
  double nrm2 = 0.0;
  for (double v : x.values) {
    if (!std::isfinite(v))
      throw std::invalid_argument("amplitude_encode: non-finite feature");
    nrm2 += v * v;
  }
  if (nrm2 <= 0.0)
    throw std::invalid_argument(
        "amplitude_encode: cannot normalize the zero vector");
  const double inv = 1.0 / std::sqrt(nrm2);
  std::vector<cd> amps(len);
  for (std::size_t i = 0; i < len; ++i) amps[i] = cd{x.values[i] * inv, 0.0};
  return PureState::from_amplitudes(n_qubits, std::move(amps));
}

namespace {

PureState encode_target(const FeatureVector& x, int n_qubits,
                        EncodingKind kind) {
  if (kind == EncodingKind::angle) {
    if (x.scale == FeatureVector::Scale::pixels01)
      return angle_encode(FeatureVector::angles_from_pixels(x.values),
                          n_qubits);
    return angle_encode(x, n_qubits);
  }
  return amplitude_encode(x, n_qubits);
}

double angle_of(const FeatureVector& x, std::size_t i) {
  return x.scale == FeatureVector::Scale::pixels01 ? x.values[i] * kPi
                                                   : x.values[i];
}

}  // namespace

EncodedState encode(const FeatureVector& x, int n_qubits,
                    const EncoderSpec& spec) {
  spec.validate();
  switch (spec.defense) {
    case DefenseMode::none:
      return encode_target(x, n_qubits, spec.kind);

    case DefenseMode::single_qubit_steer: {
      if (static_cast<int>(x.values.size()) != n_qubits)
        throw std::invalid_argument("encode: feature count != qubit count");
      // Independent per-qubit channels |0> -> Ry(x_i)|0>, combined so that
      // qubit i keeps index bit i.
      auto steered_qubit = [&](int q) {
        const PureState tau =
            angle_encode(FeatureVector::angles({angle_of(x, q)}), 1);
        const SteeringPlan plan(spec.strength, spec.rounds,
                                SteeringMode::single_qubit, tau);
        return steer(plan, PureState::zero(1));
      };
      MixedState combined = steered_qubit(0);
      for (int q = 1; q < n_qubits; ++q)
        combined = tensor(steered_qubit(q), combined);
      return combined;
    }

    case DefenseMode::multi_qubit_steer: {
      const PureState tau = encode_target(x, n_qubits, spec.kind);
      const SteeringPlan plan(spec.strength, spec.rounds,
                              SteeringMode::multi_qubit, tau);
      return steer(plan, PureState::zero(n_qubits));
    }
  }
  throw std::logic_error("encode: unreachable");
}

std::vector<double> steered_intensity_image(const MixedState& rho) {
  std::vector<double> out(rho.dim());
  double peak = 0.0;
  for (std::size_t i = 0; i < rho.dim(); ++i) {
    out[i] = std::max(0.0, rho.rho()(i, i).real());
    peak = std::max(peak, out[i]);
  }
  if (peak > 0.0)
    for (double& v : out) v /= peak;
  return out;
}

int n_qubits_of(const EncodedState& s) {
  return std::visit([](const auto& v) { return v.n_qubits(); }, s);
}

double fidelity_to_pure(const EncodedState& s, const PureState& target) {
  return std::visit(
      [&](const auto& v) { return fidelity_to_pure(v, target); }, s);
}

}  // namespace qsteer
