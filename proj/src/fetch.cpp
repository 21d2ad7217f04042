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

#include "qsteer/fetch.hpp"

#include <filesystem>
#include <fstream>

#include "qsteer/errors.hpp"

#if defined(QSTEER_HAVE_ZLIB)
#include <zlib.h>
#endif

#if defined(QSTEER_HAVE_HTTPLIB)
#if defined(QSTEER_HAVE_OPENSSL)
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>
#endif

namespace qsteer {
namespace {

// Decompressed IDX sizes are fixed by the published image/label counts:
// images = 16 + n*28*28, labels = 8 + n.
constexpr std::uint64_t kTrainImages = 16 + 60000ull * 784;
constexpr std::uint64_t kTrainLabels = 8 + 60000ull;
constexpr std::uint64_t kTestImages = 16 + 10000ull * 784;
constexpr std::uint64_t kTestLabels = 8 + 10000ull;

std::vector<DatasetFile> manifest_for(const std::string& base) {
  return {
      {"train-images-idx3-ubyte", base + "train-images-idx3-ubyte.gz",
       kTrainImages},
      {"train-labels-idx1-ubyte", base + "train-labels-idx1-ubyte.gz",
       kTrainLabels},
      {"t10k-images-idx3-ubyte", base + "t10k-images-idx3-ubyte.gz",
       kTestImages},
      {"t10k-labels-idx1-ubyte", base + "t10k-labels-idx1-ubyte.gz",
       kTestLabels},
  };
}

}  // namespace

std::vector<DatasetFile> dataset_manifest(const std::string& dataset) {
  if (dataset == "mnist")
    return manifest_for("https://ossci-datasets.s3.amazonaws.com/mnist/");
  if (dataset == "fashion-mnist")
    return manifest_for(
        "http://fashion-mnist.s3-website.eu-central-1.amazonaws.com/");
  if (dataset == "kmnist")
    return manifest_for("http://codh.rois.ac.jp/kmnist/dataset/kmnist/");
  throw ConfigError("unknown dataset: " + dataset);
}

std::vector<std::uint8_t> gunzip(const std::vector<std::uint8_t>& gz) {
#if defined(QSTEER_HAVE_ZLIB)
  z_stream strm{};
  if (inflateInit2(&strm, 16 + MAX_WBITS) != Z_OK)
    throw DataError("zlib init failed");
  std::vector<std::uint8_t> out;
  std::uint8_t buf[1 << 16];
  strm.next_in = const_cast<std::uint8_t*>(gz.data());
  strm.avail_in = static_cast<uInt>(gz.size());
  int rc = Z_OK;
  while (rc != Z_STREAM_END) {
    strm.next_out = buf;
    strm.avail_out = sizeof buf;
    rc = inflate(&strm, Z_NO_FLUSH);
    if (rc != Z_OK && rc != Z_STREAM_END) {
      inflateEnd(&strm);
      throw DataError("gzip decompression failed");
    }
    out.insert(out.end(), buf, buf + (sizeof buf - strm.avail_out));
  }
  inflateEnd(&strm);
  return out;
#else
  (void)gz;
  throw DataError("this build has no zlib; fetch-data is unavailable");
#endif
}

void fetch_dataset(const std::string& dataset, const std::string& dest) {
#if defined(QSTEER_HAVE_HTTPLIB)
  const auto files = dataset_manifest(dataset);
  const std::filesystem::path dir =
      std::filesystem::path(dest) / dataset;
  std::filesystem::create_directories(dir);

  for (const DatasetFile& f : files) {
    const std::filesystem::path target = dir / f.name;
    if (std::filesystem::exists(target) &&
        std::filesystem::file_size(target) == f.unpacked_bytes)
      continue;

    const auto scheme_end = f.url.find("://");
    const auto host_end = f.url.find('/', scheme_end + 3);
    const std::string origin = f.url.substr(0, host_end);
    const std::string path = f.url.substr(host_end);

    httplib::Client client(origin);
    client.set_follow_location(true);
    client.set_connection_timeout(30);
    client.set_read_timeout(120);
    auto res = client.Get(path);
    if (!res || res->status != 200)
      throw DataError("download failed for " + f.url +
                      (res ? " (status " + std::to_string(res->status) + ")"
                           : " (no response)"));

    const std::vector<std::uint8_t> gz(res->body.begin(), res->body.end());
    const std::vector<std::uint8_t> raw = gunzip(gz);
    if (raw.size() != f.unpacked_bytes)
      throw DataError(f.name + ": decompressed size " +
                      std::to_string(raw.size()) + " != published " +
                      std::to_string(f.unpacked_bytes));

    std::ofstream out(target, std::ios::binary);
    out.write(reinterpret_cast<const char*>(raw.data()), raw.size());
  }
#else
  (void)dataset;
  (void)dest;
  throw DataError("this build has no HTTP client; fetch-data is unavailable");
#endif
}

}  // namespace qsteer
