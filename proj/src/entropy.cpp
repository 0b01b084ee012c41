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

#include "corrbound/entropy.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace corrbound {

double spectrum_entropy(std::span<const double> eigenvalues) {
  double s = 0.0;
  for (auto v : eigenvalues) {
    if (v < kEntropyZeroCutoff) continue;
    s -= v * std::log2(v);
  }
  return std::max(0.0, s);
}

double von_neumann_entropy(const DensityMatrix& rho) { return spectrum_entropy(rho.spectrum()); }

double von_neumann_entropy(const ComplexMatrix& m) {
  return von_neumann_entropy(DensityMatrix::from_matrix(m, DimSplit::single(m.rows())));
}

double shannon_entropy(std::span<const double> p) {
  double sum = 0.0;
  for (auto x : p) {
    if (!(x >= -1e-12)) throw InvalidInput("probability", fmt::format("entry {} is negative", x));
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw InvalidInput("probability", fmt::format("distribution sums to {}", sum));
  return spectrum_entropy(p);
}

}  // namespace corrbound
