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

#pragma once

#include <complex>
#include <random>
#include <vector>

#include "qsteer/qstate.hpp"

namespace qsteer::test {

inline std::vector<cd> random_cvec(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<cd> v(n);
  for (auto& x : v) x = {d(rng), d(rng)};
  return v;
}

inline PureState random_state(std::mt19937_64& rng, int n_qubits) {
  auto v = random_cvec(rng, std::size_t{1} << n_qubits);
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  const double inv = 1.0 / std::sqrt(s);
  for (auto& x : v) x *= inv;
  return PureState::from_amplitudes(n_qubits, std::move(v));
}

inline double max_cdev(const std::vector<cd>& a, const std::vector<cd>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace qsteer::test
