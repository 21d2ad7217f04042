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

#include "qsteer/attacks.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

#include <json.hpp>

#include "qsteer/errors.hpp"
#include "qsteer/threading.hpp"

namespace qsteer {
namespace {

inline double sign0(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

inline double clip01(double v) { return std::min(1.0, std::max(0.0, v)); }

}  // namespace

std::string to_string(AttackKind k) {
  return k == AttackKind::fgsm ? "fgsm" : "pgd";
}

AttackKind attack_kind_from_string(const std::string& s) {
  if (s == "fgsm") return AttackKind::fgsm;
  if (s == "pgd") return AttackKind::pgd;
  throw std::invalid_argument("unknown attack kind: " + s);
}

void AttackSpec::validate() const {
  if (!(epsilon >= 0.0)) throw ConfigError("attack: epsilon must be >= 0");
  if (kind == AttackKind::pgd) {
    if (!(alpha > 0.0)) throw ConfigError("attack: pgd alpha must be > 0");
    if (steps < 1) throw ConfigError("attack: pgd needs steps >= 1");
  }
}

Image fgsm(const ModelSpec& spec, const ParamSet& params, const Image& img,
           int label, double eps, GradMethod method) {
  if (eps == 0.0) return img;
  const Image g = input_grad(spec, params,
                             EncoderSpec::plain(spec.encoding_kind()), img,
                             label, method);
  Image out = img;
  for (std::size_t p = 0; p < out.pix.size(); ++p)
    out.pix[p] = clip01(img.pix[p] + eps * sign0(g.pix[p]));
  return out;
}

Image pgd(const ModelSpec& spec, const ParamSet& params, const Image& img,
          int label, const AttackSpec& attack, GradMethod method) {
  attack.validate();
  if (attack.epsilon == 0.0) return img;
  const EncoderSpec enc = EncoderSpec::plain(spec.encoding_kind());
  Image x = img;
  for (int t = 0; t < attack.steps; ++t) {
    const Image g = input_grad(spec, params, enc, x, label, method);
    for (std::size_t p = 0; p < x.pix.size(); ++p) {
      const double lo = img.pix[p] - attack.epsilon;
      const double hi = img.pix[p] + attack.epsilon;
      double v = x.pix[p] + attack.alpha * sign0(g.pix[p]);
      v = std::min(hi, std::max(lo, v));  // project onto B_eps(img)
      x.pix[p] = clip01(v);
    }
  }
  return x;
}

Image attack_image(const ModelSpec& spec, const ParamSet& params,
                   const Image& img, int label, const AttackSpec& attack,
                   GradMethod method) {
  return attack.kind == AttackKind::fgsm
             ? fgsm(spec, params, img, label, attack.epsilon, method)
             : pgd(spec, params, img, label, attack, method);
}

ImageSet attack_set(const ModelSpec& spec, const ParamSet& params,
                    const ImageSet& set, const AttackSpec& attack,
                    GradMethod method, int threads) {
  if (set.size() == 0) throw std::invalid_argument("attack_set: empty set");
  ImageSet out;
  out.labels = set.labels;
  out.prov = set.prov;
  out.images.resize(set.size());
  parallel_for(set.size(), threads, [&](std::size_t i) {
    out.images[i] = attack_image(spec, params, set.images[i], set.labels[i],
                                 attack, method);
  });
  return out;
}

std::vector<AttackCurvePoint> attack_curve(
    const ModelSpec& spec, const ParamSet& params, const ImageSet& set,
    AttackSpec attack, const std::vector<double>& epsilons,
    const EncoderSpec& defended_encoder, GradMethod method, int threads) {
  std::vector<AttackCurvePoint> curve;
  const EncoderSpec plain = EncoderSpec::plain(spec.encoding_kind());
  for (double eps : epsilons) {
    attack.epsilon = eps;
    const ImageSet adv = attack_set(spec, params, set, attack, method,
                                    threads);
    AttackCurvePoint pt;
    pt.epsilon = eps;
    pt.acc_undefended = accuracy(spec, params, adv, plain, threads);
    pt.acc_defended = accuracy(spec, params, adv, defended_encoder, threads);
    curve.push_back(pt);
  }
  return curve;
}

void save_adversarial_set(const ImageSet& set, const AttackSpec& attack,
                          std::uint64_t model_hash, std::uint64_t seed,
                          const std::string& path_prefix) {
  std::ofstream bin(path_prefix + ".bin", std::ios::binary);
  if (!bin) throw DataError("cannot write " + path_prefix + ".bin");
  const char magic[4] = {'Q', 'S', 'T', 'T'};
  bin.write(magic, 4);
  const std::uint32_t n = static_cast<std::uint32_t>(set.size());
  const std::uint32_t h = set.images.empty() ? 0 : set.images[0].height;
  const std::uint32_t w = set.images.empty() ? 0 : set.images[0].width;
  bin.write(reinterpret_cast<const char*>(&n), 4);
  bin.write(reinterpret_cast<const char*>(&h), 4);
  bin.write(reinterpret_cast<const char*>(&w), 4);
  for (const Image& img : set.images)
    bin.write(reinterpret_cast<const char*>(img.pix.data()),
              img.pix.size() * sizeof(double));
  for (int l : set.labels) {
    const std::int32_t v = l;
    bin.write(reinterpret_cast<const char*>(&v), 4);
  }

  nlohmann::json j{{"attack",
                    {{"kind", to_string(attack.kind)},
                     {"epsilon", attack.epsilon},
                     {"alpha", attack.alpha},
                     {"steps", attack.steps}}},
                   {"model_hash", model_hash},
                   {"seed", seed},
                   {"count", set.size()}};
  std::ofstream side(path_prefix + ".json");
  side << j.dump(2) << "\n";
}

ImageSet load_adversarial_set(const std::string& path_prefix) {
  std::ifstream bin(path_prefix + ".bin", std::ios::binary);
  if (!bin) throw DataError("missing adversarial set " + path_prefix + ".bin");
  char magic[4];
  bin.read(magic, 4);
  if (std::memcmp(magic, "QSTT", 4) != 0)
    throw DataError("bad adversarial tensor magic in " + path_prefix);
  std::uint32_t n = 0, h = 0, w = 0;
  bin.read(reinterpret_cast<char*>(&n), 4);
  bin.read(reinterpret_cast<char*>(&h), 4);
  bin.read(reinterpret_cast<char*>(&w), 4);
  ImageSet set;
  set.images.resize(n);
  for (auto& img : set.images) {
    img.height = h;
    img.width = w;
    img.pix.resize(std::size_t{h} * w);
    bin.read(reinterpret_cast<char*>(img.pix.data()),
             img.pix.size() * sizeof(double));
  }
  set.labels.resize(n);
  for (auto& l : set.labels) {
    std::int32_t v = 0;
    bin.read(reinterpret_cast<char*>(&v), 4);
    l = v;
  }
  if (!bin) throw DataError("truncated adversarial set " + path_prefix);
  return set;
}

}  // namespace qsteer
