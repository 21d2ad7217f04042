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

#include "qsteer/models.hpp"

#include <cassert>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

#include "qsteer/kernels.hpp"
#include "qsteer/rng.hpp"

namespace qsteer {
namespace {

constexpr int kQnnKernelQubits = 4;
constexpr int kMapSide = 14;
constexpr int kMapPixels = kMapSide * kMapSide;   // 196
constexpr int kHeadInput = 4 * kMapPixels;        // 784
constexpr int kHeadHidden = 64;
constexpr int kQnnClasses = 10;

// QCNN wiring. Pool blocks use (control = discarded qubit, target = kept).
struct QcnnBlock {
  int a, b;
  bool pool;
  bool anti;  // anti-controlled pool variant
};

const std::vector<QcnnBlock>& qcnn_layout() {
  static const std::vector<QcnnBlock> layout = [] {
    std::vector<QcnnBlock> v;
    auto conv_ring = [&](const std::vector<int>& q) {
      const int m = static_cast<int>(q.size());
      for (int i = 0; i < m; ++i) v.push_back({q[i], q[(i + 1) % m], false});
    };
    conv_ring({0, 1, 2, 3, 4, 5, 6, 7});
    for (int c : {0, 2, 4, 6}) v.push_back({c, c + 1, true});
    conv_ring({1, 3, 5, 7});
    v.push_back({1, 3, true});
    v.push_back({5, 7, true});
    conv_ring({3, 7});
    conv_ring({3, 7});
    v.push_back({3, 7, true, false});
    v.push_back({3, 7, true, true});
    return v;
  }();
  return layout;
}

}  // namespace

std::string to_string(ModelKind k) {
  switch (k) {
    case ModelKind::qnn: return "qnn";
    case ModelKind::qcnn: return "qcnn";
    case ModelKind::vqc: return "vqc";
  }
  return "?";
}

ModelKind model_kind_from_string(const std::string& s) {
  if (s == "qnn") return ModelKind::qnn;
  if (s == "qcnn") return ModelKind::qcnn;
  if (s == "vqc") return ModelKind::vqc;
  throw std::invalid_argument("unknown model kind: " + s);
}

ModelSpec ModelSpec::qnn(std::uint64_t seed) {
  return {ModelKind::qnn, kQnnKernelQubits, 2, kHeadHidden, kQnnClasses, seed};
}

ModelSpec ModelSpec::qcnn(std::uint64_t seed) {
  return {ModelKind::qcnn, 8, 3, 0, 2, seed};
}

ModelSpec ModelSpec::vqc(std::uint64_t seed) {
  return {ModelKind::vqc, 8, 3, 0, 2, seed};
}

void ModelSpec::validate() const {
  switch (kind) {
    case ModelKind::qnn:
      if (n_qubits != kQnnKernelQubits || classes != kQnnClasses ||
          head_hidden != kHeadHidden)
        throw std::invalid_argument("qnn spec: 4 kernel qubits, 64 hidden, "
                                    "10 classes");
      break;
    case ModelKind::qcnn:
    case ModelKind::vqc:
      if (n_qubits != 8 || classes != 2 || layers != 3)
        throw std::invalid_argument(
            "qcnn/vqc spec: 8 qubits, 3 layers, 2 classes");
      break;
  }
}

std::size_t ModelSpec::circuit_param_count() const {
  return kind == ModelKind::qnn ? 0 : 72;
}

std::size_t ModelSpec::head_param_count() const {
  if (kind != ModelKind::qnn) return 0;
  return std::size_t{kHeadInput} * kHeadHidden + kHeadHidden +
         std::size_t{kHeadHidden} * kQnnClasses + kQnnClasses;
}

std::size_t ModelSpec::param_count() const {
  return circuit_param_count() + head_param_count();
}

int ModelSpec::input_side() const {
  return kind == ModelKind::qnn ? 28 : 16;
}

EncodingKind ModelSpec::encoding_kind() const {
  return kind == ModelKind::qnn ? EncodingKind::angle
                                : EncodingKind::amplitude;
}

ParamSet ParamSet::zeros(const ModelSpec& spec) {
  ParamSet p;
  p.circuit_count = spec.circuit_param_count();
  p.head_count = spec.head_param_count();
  p.theta.assign(spec.param_count(), 0.0);
  return p;
}

ParamSet ParamSet::init(const ModelSpec& spec, std::uint64_t seed) {
  ParamSet p = zeros(spec);
  auto rng = make_rng(seed, "init");
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  for (std::size_t i = 0; i < p.circuit_count; ++i) p.theta[i] = angle(rng);
  if (p.head_count > 0) {
    std::normal_distribution<double> normal(0.0, 1.0);
    double* w = p.theta.data() + p.circuit_count;
    const double s1 = std::sqrt(2.0 / (kHeadInput + kHeadHidden));
    std::size_t off = 0;
    for (int i = 0; i < kHeadHidden * kHeadInput; ++i)
      w[off++] = s1 * normal(rng);
    off += kHeadHidden;  // b1 = 0
    const double s2 = std::sqrt(2.0 / (kHeadHidden + kQnnClasses));
    for (int i = 0; i < kQnnClasses * kHeadHidden; ++i)
      w[off++] = s2 * normal(rng);
    // b2 = 0
  }
  return p;
}

std::string ParamSet::to_json(const ModelSpec& spec) const {
  nlohmann::json j{
      {"version", 1},
      {"model", to_string(spec.kind)},
      {"spec",
       {{"n_qubits", spec.n_qubits},
        {"layers", spec.layers},
        {"head_hidden", spec.head_hidden},
        {"classes", spec.classes}}},
      {"seed", spec.seed},
      {"theta", theta}};
  return j.dump();
}

std::pair<ModelSpec, ParamSet> ParamSet::from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  if (j.at("version").get<int>() != 1)
    throw std::runtime_error("unsupported ParamSet version");
  ModelSpec spec;
  spec.kind = model_kind_from_string(j.at("model").get<std::string>());
  const auto& s = j.at("spec");
  spec.n_qubits = s.at("n_qubits").get<int>();
  spec.layers = s.at("layers").get<int>();
  spec.head_hidden = s.at("head_hidden").get<int>();
  spec.classes = s.at("classes").get<int>();
  spec.seed = j.at("seed").get<std::uint64_t>();
  spec.validate();
  ParamSet p;
  p.theta = j.at("theta").get<std::vector<double>>();
  p.circuit_count = spec.circuit_param_count();
  p.head_count = spec.head_param_count();
  if (p.theta.size() != spec.param_count())
    throw std::runtime_error("ParamSet length does not match spec");
  return {spec, std::move(p)};
}

// ---------------------------------------------------------------------------
// Circuits

std::vector<GateOp> quanv_kernel_circuit(std::uint64_t seed, int layers) {
  auto rng = make_rng(seed, "quanv-kernel");
  std::uniform_int_distribution<int> axis(0, 2);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::vector<GateOp> gates;
  for (int l = 0; l < layers; ++l) {
    for (int q = 0; q < kQnnKernelQubits; ++q) {
      const double t = angle(rng);
      switch (axis(rng)) {
        case 0: gates.push_back(GateOp::rx(q, t)); break;
        case 1: gates.push_back(GateOp::ry(q, t)); break;
        default: gates.push_back(GateOp::rz(q, t)); break;
      }
    }
    for (int q = 0; q < kQnnKernelQubits; ++q)
      gates.push_back(GateOp::cnot(q, (q + 1) % kQnnKernelQubits));
  }
  return gates;
}

std::vector<GateOp> qcnn_circuit(std::span<const double> theta) {
  if (theta.size() != 72)
    throw std::invalid_argument("qcnn circuit expects 72 parameters");
  std::vector<GateOp> gates;
  std::size_t p = 0;
  for (const QcnnBlock& blk : qcnn_layout()) {
    const double t0 = theta[p], t1 = theta[p + 1], t2 = theta[p + 2];
    p += 3;
    if (!blk.pool) {
      gates.push_back(GateOp::ry(blk.a, t0));
      gates.push_back(GateOp::ry(blk.b, t1));
      gates.push_back(GateOp::cnot(blk.a, blk.b));
      gates.push_back(GateOp::ry(blk.b, t2));
    } else if (blk.anti) {
      gates.push_back(GateOp::anti_crot(blk.a, blk.b, t0, t1, t2));
    } else {
      gates.push_back(GateOp::crot(blk.a, blk.b, t0, t1, t2));
    }
  }
  assert(p == 72);
  return gates;
}

bool qcnn_param_is_pool(std::size_t index) {
  return qcnn_layout()[index / 3].pool;
}

std::vector<GateOp> vqc_circuit(std::span<const double> theta) {
  if (theta.size() != 72)
    throw std::invalid_argument("vqc circuit expects 72 parameters");
  std::vector<GateOp> gates;
  std::size_t p = 0;
  for (int l = 0; l < 3; ++l) {
    for (int q = 0; q < 8; ++q) {
      gates.push_back(GateOp::rz(q, theta[p++]));
      gates.push_back(GateOp::ry(q, theta[p++]));
      gates.push_back(GateOp::rz(q, theta[p++]));
    }
    for (int q = 0; q < 8; ++q) gates.push_back(GateOp::cnot(q, (q + 1) % 8));
  }
  return gates;
}

// ---------------------------------------------------------------------------
// Forward passes

double z_readout(const EncodedState& in, std::span<const GateOp> gates,
                 int qubit) {
  return std::visit(
      [&](const auto& state) {
        auto s = state;  // value copy; gates run in place
        for (const GateOp& g : gates) apply_gate_inplace(s, g);
        return expectation_z(s, qubit);
      },
      in);
}

std::vector<double> FeatureMaps::flatten() const {
  std::vector<double> out;
  out.reserve(kHeadInput);
  for (const auto& c : ch) out.insert(out.end(), c.begin(), c.end());
  return out;
}

std::array<double, 4> quanv_patch_channels(const std::array<double, 4>& patch,
                                           std::span<const GateOp> kernel,
                                           const EncoderSpec& enc) {
  const FeatureVector fv =
      FeatureVector::pixels({patch.begin(), patch.end()});
  const EncodedState st = encode(fv, kQnnKernelQubits, enc);
  return std::visit(
      [&](const auto& state) {
        auto s = state;
        for (const GateOp& g : kernel) apply_gate_inplace(s, g);
        std::array<double, 4> z;
        for (int q = 0; q < 4; ++q) z[q] = expectation_z(s, q);
        return z;
      },
      st);
}

FeatureMaps quanv_forward(const Image& img, const ModelSpec& spec,
                          const EncoderSpec& enc) {
  if (img.height != 28 || img.width != 28)
    throw std::invalid_argument("quanv_forward expects a 28x28 image");
  const std::vector<GateOp> kernel =
      quanv_kernel_circuit(spec.seed, spec.layers);
  FeatureMaps maps;
  for (auto& c : maps.ch) c.resize(kMapPixels);
  for (int pr = 0; pr < kMapSide; ++pr)
    for (int pc = 0; pc < kMapSide; ++pc) {
      const std::array<double, 4> patch{
          img.at(2 * pr, 2 * pc), img.at(2 * pr, 2 * pc + 1),
          img.at(2 * pr + 1, 2 * pc), img.at(2 * pr + 1, 2 * pc + 1)};
      const std::array<double, 4> z =
          quanv_patch_channels(patch, kernel, enc);
      for (int c = 0; c < 4; ++c) maps.ch[c][pr * kMapSide + pc] = z[c];
    }
  return maps;
}

Logits qnn_head_forward(const FeatureMaps& maps, std::span<const double> head,
                        const ModelSpec& spec) {
  if (head.size() != spec.head_param_count())
    throw std::invalid_argument("head parameter length mismatch");
  const std::vector<double> x = maps.flatten();
  const double* w1 = head.data();
  const double* b1 = w1 + std::size_t{kHeadHidden} * kHeadInput;
  const double* w2 = b1 + kHeadHidden;
  const double* b2 = w2 + std::size_t{kQnnClasses} * kHeadHidden;

  std::vector<double> h(kHeadHidden);
  kernels::active().dgemv(w1, x.data(), b1, h.data(), kHeadHidden,
                          kHeadInput);
  for (double& v : h) v = std::tanh(v);
  Logits out;
  out.values.resize(kQnnClasses);
  kernels::active().dgemv(w2, h.data(), b2, out.values.data(), kQnnClasses,
                          kHeadHidden);
  return out;
}

namespace {

Logits binary_logits(double z) { return Logits{{-z, z}}; }

}  // namespace

Logits qcnn_forward(const EncodedState& state, std::span<const double> theta) {
  if (n_qubits_of(state) != 8)
    throw std::invalid_argument("qcnn_forward expects an 8-qubit state");
  return binary_logits(z_readout(state, qcnn_circuit(theta), 7));
}

Logits vqc_forward(const EncodedState& state, std::span<const double> theta) {
  if (n_qubits_of(state) != 8)
    throw std::invalid_argument("vqc_forward expects an 8-qubit state");
  return binary_logits(z_readout(state, vqc_circuit(theta), 7));
}

Logits model_forward(const ModelSpec& spec, const ParamSet& params,
                     const Image& img, const EncoderSpec& enc) {
  if (params.theta.size() != spec.param_count())
    throw std::invalid_argument("parameter vector length mismatch");
  if (spec.kind == ModelKind::qnn)
    return qnn_head_forward(quanv_forward(img, spec, enc), params.head(),
                            spec);
  if (img.height != 16 || img.width != 16)
    throw std::invalid_argument("qcnn/vqc expect a 16x16 image");
  const EncodedState st = encode(FeatureVector::pixels(img.pix), 8, enc);
  return spec.kind == ModelKind::qcnn ? qcnn_forward(st, params.circuit())
                                      : vqc_forward(st, params.circuit());
}

int predict(const Logits& l) {
  int best = 0;
  for (std::size_t i = 1; i < l.values.size(); ++i)
    if (l.values[i] > l.values[best]) best = static_cast<int>(i);
  return best;
}

}  // namespace qsteer
