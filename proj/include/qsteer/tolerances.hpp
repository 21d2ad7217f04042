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
/// Every numerical tolerance used for state validation and cross-path
/// equivalence lives here so CI behavior is reproducible.

#pragma once

namespace qsteer {

/// Norm / trace / Hermiticity / unitarity validation.
inline constexpr double kValidationTol = 1e-10;

/// Eigenvalue floor for positive-semidefiniteness checks.
inline constexpr double kPsdTol = 1e-9;

/// Entrywise agreement between two algebraic routes to the same object.
inline constexpr double kEquivalenceTol = 1e-12;

}  // namespace qsteer
