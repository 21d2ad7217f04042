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
/// IDX-format dataset ingestion (MNIST / FashionMNIST / KMNIST), 28->16
/// area-averaged downscaling, binary class filtering and seeded stratified
/// subsampling. Pixels live in [0,1] through the whole pipeline.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qsteer {

struct Image {
  int height = 0;
  int width = 0;
  std::vector<double> pix;  // row-major, [0,1]

  double& at(int r, int c) { return pix[r * width + c]; }
  double at(int r, int c) const { return pix[r * width + c]; }
};

struct Provenance {
  std::string dataset;  // "mnist", "fashion-mnist", "kmnist", "synthetic"
  std::string split;    // "train", "test"
  std::string filter;   // e.g. "binary{0,1}", "" when unfiltered
  std::uint64_t seed = 0;
  std::uint64_t checksum = 0;  // FNV-1a over the raw loaded bytes
};

struct ImageSet {
  std::vector<Image> images;
  std::vector<int> labels;
  Provenance prov;

  std::size_t size() const { return images.size(); }
};

/// Parses an IDX image/label file pair. Expects magic 0x00000803 for images
/// and 0x00000801 for labels with big-endian dimensions. Pixels are scaled
/// by 1/255. Throws std::runtime_error on bad magic, truncation or an
/// image/label count mismatch.
ImageSet load_idx(const std::string& images_path,
                  const std::string& labels_path);

/// Loads data_dir/<dataset>/{train,t10k}-images-idx3-ubyte (+labels) using
/// the canonical distribution filenames.
ImageSet load_dataset_split(const std::string& data_dir,
                            const std::string& dataset, bool train);

/// Directory search order: QSTEER_DATA_DIR env var, then fallback.
std::string resolve_data_dir(const std::string& fallback = "data");

/// 28x28 -> 16x16 by exact area-weighted averaging: every output pixel is
/// the mean of its 1.75 x 1.75 source footprint. Preserves the global mean.
Image downscale_16(const Image& img);
ImageSet downscale_16(const ImageSet& set);

/// Keeps classes {a, b}, remapping a->0, b->1; original order preserved.
/// Throws if either class is absent.
ImageSet filter_binary(const ImageSet& set, int class_a, int class_b);

/// Seeded uniform subsample without replacement, stratified by class with
/// largest-remainder apportioning. Original relative order is preserved.
ImageSet subsample(const ImageSet& set, std::size_t n, std::uint64_t seed);

/// Indices chosen by `subsample` (the complement is a valid partition).
std::vector<std::size_t> subsample_indices(const ImageSet& set, std::size_t n,
                                           std::uint64_t seed);

/// FNV-1a over 8-bit requantized pixels plus labels; platform-stable.
std::uint64_t pixel_checksum(const ImageSet& set);

/// JSON provenance sidecar for a derived set.
void write_provenance(const ImageSet& set, const std::string& path);

}  // namespace qsteer
