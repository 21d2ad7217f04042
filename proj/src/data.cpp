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

#include "qsteer/data.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "qsteer/rng.hpp"

namespace qsteer {
namespace {

constexpr std::uint32_t kImageMagic = 0x00000803;
constexpr std::uint32_t kLabelMagic = 0x00000801;

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in),
                                   std::istreambuf_iterator<char>());
}

std::uint32_t be32(const std::vector<std::uint8_t>& b, std::size_t off) {
  if (off + 4 > b.size()) throw std::runtime_error("truncated IDX header");
  return (std::uint32_t(b[off]) << 24) | (std::uint32_t(b[off + 1]) << 16) |
         (std::uint32_t(b[off + 2]) << 8) | std::uint32_t(b[off + 3]);
}

std::uint64_t fnv1a_bytes(const std::uint8_t* p, std::size_t n,
                          std::uint64_t h = 1469598103934665603ull) {
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

ImageSet load_idx(const std::string& images_path,
                  const std::string& labels_path) {
  const auto ibytes = read_file(images_path);
  const auto lbytes = read_file(labels_path);

  if (be32(ibytes, 0) != kImageMagic)
    throw std::runtime_error("bad image magic in " + images_path);
  if (be32(lbytes, 0) != kLabelMagic)
    throw std::runtime_error("bad label magic in " + labels_path);

  const std::size_t n_images = be32(ibytes, 4);
  const std::size_t rows = be32(ibytes, 8);
  const std::size_t cols = be32(ibytes, 12);
  const std::size_t n_labels = be32(lbytes, 4);

  if (n_images != n_labels)
    throw std::runtime_error("image/label count mismatch: " +
                             std::to_string(n_images) + " vs " +
                             std::to_string(n_labels));
  if (ibytes.size() != 16 + n_images * rows * cols)
    throw std::runtime_error("truncated image file " + images_path);
  if (lbytes.size() != 8 + n_labels)
    throw std::runtime_error("truncated label file " + labels_path);

  ImageSet set;
  set.images.reserve(n_images);
  set.labels.reserve(n_images);
  const std::size_t px = rows * cols;
  for (std::size_t i = 0; i < n_images; ++i) {
    Image img;
    img.height = static_cast<int>(rows);
    img.width = static_cast<int>(cols);
    img.pix.resize(px);
    const std::uint8_t* src = ibytes.data() + 16 + i * px;
    for (std::size_t j = 0; j < px; ++j) img.pix[j] = src[j] / 255.0;
    set.images.push_back(std::move(img));
    set.labels.push_back(lbytes[8 + i]);
  }
  set.prov.checksum =
      fnv1a_bytes(lbytes.data() + 8, n_labels,
                  fnv1a_bytes(ibytes.data() + 16, n_images * px));
  return set;
}

ImageSet load_dataset_split(const std::string& data_dir,
                            const std::string& dataset, bool train) {
  const std::string base = data_dir + "/" + dataset + "/";
  const std::string stem = train ? "train" : "t10k";
  ImageSet set = load_idx(base + stem + "-images-idx3-ubyte",
                          base + stem + "-labels-idx1-ubyte");
  set.prov.dataset = dataset;
  set.prov.split = train ? "train" : "test";
  return set;
}

std::string resolve_data_dir(const std::string& fallback) {
  if (const char* env = std::getenv("QSTEER_DATA_DIR"); env && *env)
    return env;
  return fallback;
}

Image downscale_16(const Image& img) {
  if (img.height != 28 || img.width != 28)
    throw std::invalid_argument("downscale_16 expects a 28x28 image");
  constexpr int kOut = 16;
  const double step = 28.0 / kOut;  // 1.75, exact in binary
  Image out;
  out.height = out.width = kOut;
  out.pix.assign(kOut * kOut, 0.0);
  for (int r = 0; r < kOut; ++r) {
    const double r0 = r * step, r1 = r0 + step;
    for (int c = 0; c < kOut; ++c) {
      const double c0 = c * step, c1 = c0 + step;
      double acc = 0.0;
      for (int sr = static_cast<int>(r0); sr < 28 && sr < r1; ++sr) {
        const double hr =
            std::min(r1, double(sr + 1)) - std::max(r0, double(sr));
        if (hr <= 0.0) continue;
        for (int sc = static_cast<int>(c0); sc < 28 && sc < c1; ++sc) {
          const double wc =
              std::min(c1, double(sc + 1)) - std::max(c0, double(sc));
          if (wc <= 0.0) continue;
          acc += hr * wc * img.at(sr, sc);
        }
      }
      out.at(r, c) = acc / (step * step);
    }
  }
  return out;
}

ImageSet downscale_16(const ImageSet& set) {
  ImageSet out;
  out.labels = set.labels;
  out.prov = set.prov;
  out.images.reserve(set.size());
  for (const Image& img : set.images) out.images.push_back(downscale_16(img));
  return out;
}

ImageSet filter_binary(const ImageSet& set, int class_a, int class_b) {
  if (class_a == class_b)
    throw std::invalid_argument("filter_binary: classes must differ");
  ImageSet out;
  out.prov = set.prov;
  out.prov.filter = "binary{" + std::to_string(class_a) + "," +
                    std::to_string(class_b) + "}";
  bool seen_a = false, seen_b = false;
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (set.labels[i] == class_a) {
      out.images.push_back(set.images[i]);
      out.labels.push_back(0);
      seen_a = true;
    } else if (set.labels[i] == class_b) {
      out.images.push_back(set.images[i]);
      out.labels.push_back(1);
      seen_b = true;
    }
  }
  if (!seen_a || !seen_b)
    throw std::runtime_error("filter_binary: a requested class is absent");
  return out;
}

std::vector<std::size_t> subsample_indices(const ImageSet& set, std::size_t n,
                                           std::uint64_t seed) {
  if (n > set.size())
    throw std::invalid_argument("subsample: n exceeds set size");

  // Group indices by class, apportion n by largest remainder, then draw
  // without replacement per class.
  std::vector<int> classes;
  for (int l : set.labels)
    if (std::find(classes.begin(), classes.end(), l) == classes.end())
      classes.push_back(l);
  std::sort(classes.begin(), classes.end());

  std::vector<std::vector<std::size_t>> by_class(classes.size());
  for (std::size_t i = 0; i < set.size(); ++i) {
    const std::size_t c = std::distance(
        classes.begin(),
        std::find(classes.begin(), classes.end(), set.labels[i]));
    by_class[c].push_back(i);
  }

  const double total = static_cast<double>(set.size());
  std::vector<std::size_t> quota(classes.size());
  std::vector<std::pair<double, std::size_t>> remainder;
  std::size_t assigned = 0;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const double exact = n * (by_class[c].size() / total);
    quota[c] = static_cast<std::size_t>(exact);
    assigned += quota[c];
    remainder.push_back({exact - quota[c], c});
  }
  std::sort(remainder.begin(), remainder.end(), [](auto& a, auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  for (std::size_t i = 0; assigned < n; ++i, ++assigned)
    ++quota[remainder[i % remainder.size()].second];
  // Quotas are capped by availability; spill goes to classes with room.
  for (std::size_t c = 0; c < classes.size(); ++c) {
    if (quota[c] > by_class[c].size()) {
      std::size_t spill = quota[c] - by_class[c].size();
      quota[c] = by_class[c].size();
      for (std::size_t o = 0; spill > 0 && o < classes.size(); ++o) {
        const std::size_t room = by_class[o].size() - quota[o];
        const std::size_t take = std::min(room, spill);
        quota[o] += take;
        spill -= take;
      }
    }
  }

  std::vector<std::size_t> chosen;
  chosen.reserve(n);
  auto rng = make_rng(seed, "subsample");
  for (std::size_t c = 0; c < classes.size(); ++c) {
    std::vector<std::size_t> pool = by_class[c];
    std::shuffle(pool.begin(), pool.end(), rng);
    chosen.insert(chosen.end(), pool.begin(), pool.begin() + quota[c]);
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

ImageSet subsample(const ImageSet& set, std::size_t n, std::uint64_t seed) {
  const auto idx = subsample_indices(set, n, seed);
  ImageSet out;
  out.prov = set.prov;
  out.prov.seed = seed;
  for (std::size_t i : idx) {
    out.images.push_back(set.images[i]);
    out.labels.push_back(set.labels[i]);
  }
  return out;
}

std::uint64_t pixel_checksum(const ImageSet& set) {
  std::uint64_t h = 1469598103934665603ull;
  for (const Image& img : set.images)
    for (double v : img.pix) {
      const auto q = static_cast<std::uint8_t>(std::lround(v * 255.0));
      h ^= q;
      h *= 1099511628211ull;
    }
  for (int l : set.labels) {
    h ^= static_cast<std::uint8_t>(l);
    h *= 1099511628211ull;
  }
  return h;
}

void write_provenance(const ImageSet& set, const std::string& path) {
  nlohmann::json j{{"dataset", set.prov.dataset},
                   {"split", set.prov.split},
                   {"filter", set.prov.filter},
                   {"seed", set.prov.seed},
                   {"checksum", set.prov.checksum},
                   {"count", set.size()},
                   {"pixel_checksum", pixel_checksum(set)}};
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace qsteer
