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

#include "qsteer/grad.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "qsteer/errors.hpp"
#include "qsteer/kernels.hpp"
#include "qsteer/rng.hpp"
#include "qsteer/threading.hpp"

namespace qsteer {
namespace {

constexpr double kPi = std::numbers::pi;

// Four-term shift rule for controlled rotations (generator eigenvalues
// {-1/2, 0, +1/2}).
const double kCrotC1 = (std::sqrt(2.0) + 1.0) / (4.0 * std::sqrt(2.0));
const double kCrotC2 = (std::sqrt(2.0) - 1.0) / (4.0 * std::sqrt(2.0));

double softmax_denominator(const std::vector<double>& v, double m) {
  double s = 0.0;
  for (double x : v) s += std::exp(x - m);
  return s;
}

// d loss / d z for the (-z, +z) binary logit map.
double binary_dloss_dz(double z, int label) {
  const double p1 = 1.0 / (1.0 + std::exp(-2.0 * z));
  return 2.0 * (p1 - (label == 1 ? 1.0 : 0.0));
}

PureState encode_flat(const ModelSpec& spec, const Image& img) {
  return amplitude_encode(FeatureVector::pixels(img.pix), spec.n_qubits);
}

std::vector<GateOp> circuit_for(const ModelSpec& spec,
                                std::span<const double> theta) {
  return spec.kind == ModelKind::qcnn ? qcnn_circuit(theta)
                                      : vqc_circuit(theta);
}

double circuit_z(const ModelSpec& spec, std::span<const double> theta,
                 const PureState& state) {
  PureState s = state;
  for (const GateOp& g : circuit_for(spec, theta)) apply_gate_inplace(s, g);
  return expectation_z(s, 7);
}

// Analytic gradient of the head loss at fixed feature maps, accumulated
// into ghead (laid out like ParamSet head storage).
void head_backprop(std::span<const double> head, const std::vector<double>& x,
                   int label, double* ghead) {
  const int nin = 784, nh = 64, nc = 10;
  const double* w1 = head.data();
  const double* b1 = w1 + std::size_t{nh} * nin;
  const double* w2 = b1 + nh;
  const double* b2 = w2 + std::size_t{nc} * nh;

  std::vector<double> h(nh);
  kernels::active().dgemv(w1, x.data(), b1, h.data(), nh, nin);
  for (double& v : h) v = std::tanh(v);
  Logits logits;
  logits.values.resize(nc);
  kernels::active().dgemv(w2, h.data(), b2, logits.values.data(), nc, nh);

  const std::vector<double> g2 = loss_grad_logits(logits, label);

  double* gw1 = ghead;
  double* gb1 = gw1 + std::size_t{nh} * nin;
  double* gw2 = gb1 + nh;
  double* gb2 = gw2 + std::size_t{nc} * nh;
  for (int c = 0; c < nc; ++c) {
    for (int j = 0; j < nh; ++j) gw2[c * nh + j] += g2[c] * h[j];
    gb2[c] += g2[c];
  }
  std::vector<double> da1(nh);
  for (int j = 0; j < nh; ++j) {
    double s = 0.0;
    for (int c = 0; c < nc; ++c) s += w2[c * nh + j] * g2[c];
    da1[j] = s * (1.0 - h[j] * h[j]);
  }
  for (int j = 0; j < nh; ++j) {
    const double d = da1[j];
    double* row = gw1 + std::size_t{j} * nin;
    for (int i = 0; i < nin; ++i) row[i] += d * x[i];
    gb1[j] += d;
  }
}

}  // namespace

void TrainConfig::validate() const {
  if (!(lr >= 0.0)) throw ConfigError("train: learning rate must be >= 0");
  if (epochs < 1) throw ConfigError("train: epochs must be >= 1");
  if (batch_size < 1) throw ConfigError("train: batch size must be >= 1");
}

double loss(const Logits& logits, int label) {
  if (label < 0 || label >= static_cast<int>(logits.values.size()))
    throw std::invalid_argument("loss: label out of range");
  const double m =
      *std::max_element(logits.values.begin(), logits.values.end());
  return std::log(softmax_denominator(logits.values, m)) -
         (logits.values[label] - m);
}

std::vector<double> loss_grad_logits(const Logits& logits, int label) {
  const double m =
      *std::max_element(logits.values.begin(), logits.values.end());
  const double denom = softmax_denominator(logits.values, m);
  std::vector<double> g(logits.values.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    g[i] = std::exp(logits.values[i] - m) / denom;
  g[label] -= 1.0;
  return g;
}

std::vector<double> param_grad(const ModelSpec& spec, const ParamSet& params,
                               std::span<const Image> images,
                               std::span<const int> labels, int threads) {
  if (images.empty() || images.size() != labels.size())
    throw std::invalid_argument("param_grad: bad batch");
  const std::size_t np = params.theta.size();
  std::vector<std::vector<double>> per_sample(images.size());

  if (spec.kind == ModelKind::qnn) {
    parallel_for(images.size(), threads, [&](std::size_t s) {
      per_sample[s].assign(np, 0.0);
      const FeatureMaps maps = quanv_forward(
          images[s], spec, EncoderSpec::plain(EncodingKind::angle));
      head_backprop(params.head(), maps.flatten(), labels[s],
                    per_sample[s].data());
    });
  } else {
    parallel_for(images.size(), threads, [&](std::size_t s) {
      per_sample[s].assign(np, 0.0);
      const PureState state = encode_flat(spec, images[s]);
      const double z = circuit_z(spec, params.theta, state);
      const double dl_dz = binary_dloss_dz(z, labels[s]);
      std::vector<double> shifted = params.theta;
      for (std::size_t j = 0; j < np; ++j) {
        const double orig = shifted[j];
        double dz;
        if (spec.kind == ModelKind::qcnn && qcnn_param_is_pool(j)) {
          shifted[j] = orig + kPi / 2;
          const double zp1 = circuit_z(spec, shifted, state);
          shifted[j] = orig - kPi / 2;
          const double zm1 = circuit_z(spec, shifted, state);
          shifted[j] = orig + 3 * kPi / 2;
          const double zp3 = circuit_z(spec, shifted, state);
          shifted[j] = orig - 3 * kPi / 2;
          const double zm3 = circuit_z(spec, shifted, state);
          dz = kCrotC1 * (zp1 - zm1) - kCrotC2 * (zp3 - zm3);
        } else {
          shifted[j] = orig + kPi / 2;
          const double zp = circuit_z(spec, shifted, state);
          shifted[j] = orig - kPi / 2;
          const double zm = circuit_z(spec, shifted, state);
          dz = 0.5 * (zp - zm);
        }
        shifted[j] = orig;
        per_sample[s][j] = dl_dz * dz;
      }
    });
  }

  std::vector<double> g(np, 0.0);
  for (const auto& gs : per_sample)
    for (std::size_t j = 0; j < np; ++j) g[j] += gs[j];
  const double inv = 1.0 / images.size();
  for (double& v : g) v *= inv;
  return g;
}

namespace {

Image input_grad_fd_full(const ModelSpec& spec, const ParamSet& params,
                         const EncoderSpec& enc, const Image& img, int label,
                         double h) {
  Image g;
  g.height = img.height;
  g.width = img.width;
  g.pix.assign(img.pix.size(), 0.0);
  Image probe = img;
  for (std::size_t p = 0; p < img.pix.size(); ++p) {
    const double orig = probe.pix[p];
    probe.pix[p] = orig + h;
    const double lp = loss(model_forward(spec, params, probe, enc), label);
    probe.pix[p] = orig - h;
    const double lm = loss(model_forward(spec, params, probe, enc), label);
    probe.pix[p] = orig;
    g.pix[p] = (lp - lm) / (2.0 * h);
  }
  return g;
}

// qnn: only one 2x2 patch changes per perturbed pixel, so the cached maps
// are spliced and only that patch plus the head is recomputed. Values are
// bit-identical to the full recomputation.
Image input_grad_fd_qnn(const ModelSpec& spec, const ParamSet& params,
                        const EncoderSpec& enc, const Image& img, int label,
                        double h) {
  const std::vector<GateOp> kernel =
      quanv_kernel_circuit(spec.seed, spec.layers);
  FeatureMaps maps = quanv_forward(img, spec, enc);

  Image g;
  g.height = img.height;
  g.width = img.width;
  g.pix.assign(img.pix.size(), 0.0);

  auto patch_of = [&](int pr, int pc) {
    return std::array<double, 4>{
        img.at(2 * pr, 2 * pc), img.at(2 * pr, 2 * pc + 1),
        img.at(2 * pr + 1, 2 * pc), img.at(2 * pr + 1, 2 * pc + 1)};
  };

  for (int r = 0; r < 28; ++r)
    for (int c = 0; c < 28; ++c) {
      const int pr = r / 2, pc = c / 2;
      const int slot = (r % 2) * 2 + (c % 2);
      const std::array<double, 4> base = patch_of(pr, pc);
      const std::array<double, 4> saved{
          maps.ch[0][pr * 14 + pc], maps.ch[1][pr * 14 + pc],
          maps.ch[2][pr * 14 + pc], maps.ch[3][pr * 14 + pc]};

      double l2[2];
      for (int dir = 0; dir < 2; ++dir) {
        std::array<double, 4> patch = base;
        patch[slot] += dir == 0 ? h : -h;
        const std::array<double, 4> z =
            quanv_patch_channels(patch, kernel, enc);
        for (int ch = 0; ch < 4; ++ch) maps.ch[ch][pr * 14 + pc] = z[ch];
        l2[dir] =
            loss(qnn_head_forward(maps, params.head(), spec), label);
      }
      for (int ch = 0; ch < 4; ++ch) maps.ch[ch][pr * 14 + pc] = saved[ch];
      g.at(r, c) = (l2[0] - l2[1]) / (2.0 * h);
    }
  return g;
}

Image input_grad_adjoint(const ModelSpec& spec, const ParamSet& params,
                         const Image& img, int label) {
  const std::size_t n = img.pix.size();
  double nrm2 = 0.0;
  for (double v : img.pix) nrm2 += v * v;
  if (nrm2 <= 0.0)
    throw NumericError("input_grad: zero image has no amplitude encoding");
  const double nrm = std::sqrt(nrm2);

  PureState psi0 = encode_flat(spec, img);
  const std::vector<GateOp> gates = circuit_for(spec, params.circuit());

  // w = U^dag Z U psi0 by forward pass, Z, then reversed adjoint gates.
  PureState w = psi0;
  for (const GateOp& g : gates) apply_gate_inplace(w, g);
  {
    const std::size_t bit = std::size_t{1} << 7;
    auto& amps = w.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i)
      if (i & bit) amps[i] = -amps[i];
  }
  for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
    GateOp inv = *it;
    const int d = inv.arity == 1 ? 2 : 4;
    for (int r = 0; r < d; ++r)
      for (int cidx = r; cidx < d; ++cidx) {
        const cd tmp = std::conj(inv.m[r * d + cidx]);
        inv.m[r * d + cidx] = std::conj(inv.m[cidx * d + r]);
        inv.m[cidx * d + r] = tmp;
      }
    apply_gate_inplace(w, inv);
  }

  const double z = kernels::active()
                       .cdotc(psi0.amplitudes().data(), w.amplitudes().data(),
                              psi0.dim())
                       .real();
  const double dl_dz = binary_dloss_dz(z, label);

  // z = <psi0|A|psi0> with psi0 = v/|v| real, so d z / d v_j =
  // (2 Re w_j - 2 z psi0_j) / |v|.
  Image g;
  g.height = img.height;
  g.width = img.width;
  g.pix.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double gpsi = 2.0 * w.amplitudes()[j].real();
    const double proj = 2.0 * z * psi0.amplitudes()[j].real();
    g.pix[j] = dl_dz * (gpsi - proj) / nrm;
  }
  return g;
}

}  // namespace

Image input_grad(const ModelSpec& spec, const ParamSet& params,
                 const EncoderSpec& enc, const Image& img, int label,
                 GradMethod method, double h) {
  if (enc.defended())
    throw std::invalid_argument(
        "input_grad: white-box attacks run against the undefended encoder");
  if (spec.kind == ModelKind::qnn)
    return input_grad_fd_qnn(spec, params, enc, img, label, h);
  if (method == GradMethod::adjoint)
    return input_grad_adjoint(spec, params, img, label);
  return input_grad_fd_full(spec, params, enc, img, label, h);
}

double accuracy(const ModelSpec& spec, const ParamSet& params,
                const ImageSet& set, const EncoderSpec& enc, int threads,
                std::vector<int>* predictions) {
  if (set.size() == 0) throw std::invalid_argument("accuracy: empty set");
  std::vector<int> pred(set.size());
  parallel_for(set.size(), threads, [&](std::size_t i) {
    pred[i] = predict(model_forward(spec, params, set.images[i], enc));
  });
  std::size_t hits = 0;
  for (std::size_t i = 0; i < set.size(); ++i)
    if (pred[i] == set.labels[i]) ++hits;
  if (predictions) *predictions = std::move(pred);
  return static_cast<double>(hits) / set.size();
}

TrainResult train(const ModelSpec& spec, const ImageSet& train_set,
                  const ImageSet& test_set, const TrainConfig& config) {
  config.validate();
  spec.validate();
  if (train_set.size() == 0 || test_set.size() == 0)
    throw std::invalid_argument("train: empty dataset");

  const EncoderSpec enc = EncoderSpec::plain(spec.encoding_kind());
  ParamSet params = ParamSet::init(spec, config.seed);
  const std::size_t np = params.theta.size();

  std::vector<double> m(np, 0.0), v(np, 0.0);
  long step = 0;
  auto shuffle_rng = make_rng(config.seed, "shuffle");

  std::vector<std::size_t> order(train_set.size());
  std::iota(order.begin(), order.end(), 0);

  TrainResult result{params, {}};
  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), shuffle_rng);
    double loss_sum = 0.0;
    std::size_t loss_count = 0;

    for (std::size_t off = 0; off < order.size();
         off += config.batch_size) {
      const std::size_t take =
          std::min<std::size_t>(config.batch_size, order.size() - off);
      std::vector<Image> batch_imgs(take);
      std::vector<int> batch_labels(take);
      for (std::size_t i = 0; i < take; ++i) {
        batch_imgs[i] = train_set.images[order[off + i]];
        batch_labels[i] = train_set.labels[order[off + i]];
      }

      std::vector<double> batch_loss(take);
      parallel_for(take, config.threads, [&](std::size_t i) {
        batch_loss[i] = loss(
            model_forward(spec, result.params, batch_imgs[i], enc),
            batch_labels[i]);
      });
      for (double l : batch_loss) {
        if (std::isnan(l)) throw NumericError("train: loss diverged (NaN)");
        loss_sum += l;
      }
      loss_count += take;

      const std::vector<double> g = param_grad(
          spec, result.params, batch_imgs, batch_labels, config.threads);

      ++step;
      const double bc1 = 1.0 - std::pow(config.beta1, step);
      const double bc2 = 1.0 - std::pow(config.beta2, step);
      for (std::size_t j = 0; j < np; ++j) {
        m[j] = config.beta1 * m[j] + (1.0 - config.beta1) * g[j];
        v[j] = config.beta2 * v[j] + (1.0 - config.beta2) * g[j] * g[j];
        result.params.theta[j] -=
            config.lr * (m[j] / bc1) / (std::sqrt(v[j] / bc2) +
                                        config.adam_eps);
      }
    }

    EpochStats stats;
    stats.epoch = epoch;
    stats.loss = loss_sum / loss_count;
    stats.train_acc =
        accuracy(spec, result.params, train_set, enc, config.threads);
    stats.test_acc =
        accuracy(spec, result.params, test_set, enc, config.threads);
    result.curve.push_back(stats);
  }
  return result;
}

}  // namespace qsteer
