// Copyright 2026 The corrbound Authors
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

#include <span>

#include "corrbound/state_library.hpp"

namespace corrbound {

/// Eigenvalues below this count as exactly zero in entropy sums.
inline constexpr double kEntropyZeroCutoff = 1e-12;

/// -sum lambda log2 lambda, with 0 log 0 = 0. Values are bits.
double spectrum_entropy(std::span<const double> eigenvalues);

double von_neumann_entropy(const DensityMatrix& rho);
/// Validates `m` as a single-factor density operator first.
double von_neumann_entropy(const ComplexMatrix& m);

/// Rejects entries below -1e-12 and sums farther than 1e-9 from one.
double shannon_entropy(std::span<const double> p);

}  // namespace corrbound
