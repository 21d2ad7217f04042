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
/// Optional download helper for the CLI. The library itself never touches
/// the network; datasets are user-supplied IDX files.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qsteer {

struct DatasetFile {
  std::string name;               // e.g. "train-images-idx3-ubyte"
  std::string url;                // gzip source
  std::uint64_t unpacked_bytes;   // exact decompressed size
};

/// The four canonical files of a dataset ("mnist", "fashion-mnist",
/// "kmnist"). Throws ConfigError for unknown names.
std::vector<DatasetFile> dataset_manifest(const std::string& dataset);

/// Downloads, gunzips and size-verifies every file into dest/<dataset>/.
/// Existing files that already pass verification are kept. Throws DataError
/// on download or verification failure.
void fetch_dataset(const std::string& dataset, const std::string& dest);

/// Raw gzip decompression (zlib). Exposed for tests.
std::vector<std::uint8_t> gunzip(const std::vector<std::uint8_t>& gz);

}  // namespace qsteer
