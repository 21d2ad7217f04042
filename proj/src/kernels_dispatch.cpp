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

#include <cstdlib>
#include <string_view>

#include "qsteer/kernels.hpp"

namespace qsteer::kernels {
namespace {

struct Selection {
  const Ops* ops;
  std::string_view name;
};

Selection pick(std::string_view requested) {
  if (requested == "scalar") return {&scalar(), "scalar"};
#if defined(QSTEER_HAVE_AVX2)
  if (requested == "avx2" && avx2_supported()) return {&avx2(), "avx2"};
#endif
#if defined(QSTEER_HAVE_NEON)
  if (requested == "neon") return {&neon(), "neon"};
#endif
  return {nullptr, {}};
}

Selection detect() {
  if (const char* env = std::getenv("QSTEER_SIMD")) {
    if (Selection s = pick(env); s.ops) return s;
    // Unknown or unsupported request falls through to auto-detection.
  }
#if defined(QSTEER_HAVE_AVX2)
  if (avx2_supported()) return {&avx2(), "avx2"};
#endif
#if defined(QSTEER_HAVE_NEON)
  return {&neon(), "neon"};
#endif
  return {&scalar(), "scalar"};
}

Selection& current() {
  static Selection sel = detect();
  return sel;
}

}  // namespace

const Ops& active() { return *current().ops; }

std::string_view active_name() { return current().name; }

std::vector<std::string_view> compiled_variants() {
  std::vector<std::string_view> v{"scalar"};
#if defined(QSTEER_HAVE_AVX2)
  if (avx2_supported()) v.push_back("avx2");
#endif
#if defined(QSTEER_HAVE_NEON)
  v.push_back("neon");
#endif
  return v;
}

bool set_active(std::string_view name) {
  Selection s = pick(name);
  if (!s.ops) return false;
  current() = s;
  return true;
}

}  // namespace qsteer::kernels
