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

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "corrbound/random.hpp"
#include "corrbound/tensor_algebra.hpp"

namespace corrbound {

struct StateTolerances {
  static constexpr double kHermitian = 1e-10;
  static constexpr double kTrace = 1e-10;
  static constexpr double kNegativeEigenvalue = 1e-10;
};

/// Validated density operator: Hermitian, unit trace and PSD within
/// StateTolerances, with a tensor-factor split whose product is the side
/// length. The spectrum found during validation is kept (ascending).
class DensityMatrix {
 public:
  /// Validates `m`. Eigenvalues in [-1e-10, 0) are clipped to zero and the
  /// spectrum renormalized; anything more negative is rejected.
  /// `negative_tol` widens the clipping window for operators derived by
  /// dividing through a small probability.
  static DensityMatrix from_matrix(const ComplexMatrix& m, const DimSplit& split,
                                   double negative_tol = StateTolerances::kNegativeEigenvalue);

  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  const DimSplit& split() const noexcept { return split_; }
  std::span<const double> spectrum() const noexcept { return spectrum_; }
  std::size_t dim() const noexcept { return matrix_.rows(); }

  double purity() const;

  /// Reduced state on the listed factors (strictly increasing).
  DensityMatrix reduce(std::span<const std::size_t> keep) const;
  DensityMatrix marginal_a() const;
  DensityMatrix marginal_b() const;

 private:
  DensityMatrix(ComplexMatrix m, DimSplit split, std::vector<double> spectrum)
      : matrix_(std::move(m)), split_(std::move(split)), spectrum_(std::move(spectrum)) {}

  ComplexMatrix matrix_;
  DimSplit split_;
  std::vector<double> spectrum_;
};

/// |v><v| / <v|v>
DensityMatrix pure_from_vector(std::span<const Complex> v, const DimSplit& split);

/// Normalized vector of i.i.d. complex Gaussians, projected.
DensityMatrix random_pure_haar(const DimSplit& split, std::uint64_t seed);

/// G G^dagger / Tr(G G^dagger) with G a (d_a d_b) x rank complex Gaussian matrix.
DensityMatrix random_mixed_ginibre(const DimSplit& split, std::size_t rank, std::uint64_t seed);

/// Exchanges the two factors of a bipartite state (rho_AB -> rho_BA).
DensityMatrix swap_subsystems(const DensityMatrix& rho);

DensityMatrix product_state(const DensityMatrix& rho_a, const DensityMatrix& rho_b);

// Named families -------------------------------------------------------------

/// |Phi+> = (|00> + |11>)/sqrt(2)
DensityMatrix bell_phi_plus();
/// z |Psi-><Psi-| + (1 - z) I/4, z in [0, 1].
DensityMatrix werner(double z);
/// I / (d_a d_b)
DensityMatrix maximally_mixed(const DimSplit& split);
/// sum_ij p(i, j) |i><i| (x) |j><j|; `table` is d_a x d_b row-major.
DensityMatrix classical_classical(std::span<const double> table, const DimSplit& split);

/// Preset lookup by name: bell_phi_plus (alias bell), werner, maximally_mixed,
/// product (diag(p, 1-p) on both qubits), classical_classical (alias classical;
/// table p(0,0) = p, p(1,1) = 1 - p). `param` defaults per family when NaN.
DensityMatrix family(const std::string& name, double param);

/// Random unitary: Gram-Schmidt of a complex Gaussian matrix.
ComplexMatrix random_unitary(std::size_t dim, CounterRng& rng);

}  // namespace corrbound
