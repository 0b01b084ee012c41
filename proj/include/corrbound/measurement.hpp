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

#include <cstddef>
#include <span>
#include <vector>

#include "corrbound/random.hpp"
#include "corrbound/state_library.hpp"

namespace corrbound {

struct MeasurementTolerances {
  static constexpr double kHermitian = 1e-10;
  static constexpr double kNegativeEigenvalue = 1e-10;
  static constexpr double kCompleteness = 1e-10;
  static constexpr double kOrthogonality = 1e-9;
  static constexpr double kUnitary = 1e-10;
  /// Outcomes less likely than this are dropped from conditional ensembles.
  static constexpr double kNegligibleOutcome = 1e-12;
};

/// Positive operator valued measure on a single space of dimension dim():
/// every element Hermitian PSD, elements summing to the identity.
class Povm {
 public:
  /// Validates every invariant; throws InvalidInput naming the failed one.
  static Povm from_elements(std::vector<ComplexMatrix> elements);
  /// Skips validation. Only for constructions that are complete and PSD by
  /// construction (rank-1 projectors of a unitary, charted POVMs, ...).
  static Povm assume_valid(std::vector<ComplexMatrix> elements);

  static Povm computational(std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<ComplexMatrix>& elements() const noexcept { return elements_; }
  const ComplexMatrix& operator[](std::size_t k) const { return elements_.at(k); }

  /// max |sum_k E_k - 1| entry.
  double completeness_defect() const;

 private:
  explicit Povm(std::vector<ComplexMatrix> elements);

  std::size_t dim_ = 0;
  std::vector<ComplexMatrix> elements_;
};

/// Orthogonal projective (von Neumann) measurement.
class ProjectiveMeasurement {
 public:
  static ProjectiveMeasurement from_projectors(std::vector<ComplexMatrix> projectors);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return projectors_.size(); }
  const std::vector<ComplexMatrix>& projectors() const noexcept { return projectors_; }
  const ComplexMatrix& operator[](std::size_t k) const { return projectors_.at(k); }

  /// max over (k, j) of |P_k P_j - delta_kj P_k| entries.
  double orthogonality_defect() const;
  double completeness_defect() const;

  Povm as_povm() const { return Povm::assume_valid(projectors_); }

 private:
  explicit ProjectiveMeasurement(std::vector<ComplexMatrix> projectors);

  std::size_t dim_ = 0;
  std::vector<ComplexMatrix> projectors_;
};

/// Outcome probabilities with the post-measurement states of A. Outcomes
/// whose probability is below kNegligibleOutcome carry no conditional state.
struct ConditionalEnsemble {
  std::vector<double> probabilities;         // one per measurement outcome
  std::vector<std::size_t> retained;         // outcomes with a conditional state
  std::vector<DensityMatrix> conditionals;   // parallel to `retained`
  std::vector<std::size_t> dropped;

  /// sum_k p_k S(rho_{A|k})
  double average_conditional_entropy() const;
  /// sum_k p_k rho_{A|k}
  ComplexMatrix average_state() const;
};

/// Rank-1 projectors u|i><i|u^dagger, one per column of `u`.
ProjectiveMeasurement projective_from_unitary(const ComplexMatrix& u);

/// Basis {|n>, |n_perp>} with |n> = cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
ProjectiveMeasurement qubit_projective(double theta, double phi);

/// p_k = Tr[(1 (x) E_k) rho], rho_{A|k} = Tr_B[(1 (x) E_k) rho] / p_k.
ConditionalEnsemble condition_on_b(const DensityMatrix& rho, const Povm& m);

/// S(rho_A) - sum_k p_k S(rho_{A|k}) for the given measurement, in bits.
double fixed_measurement_classical_info(const DensityMatrix& rho, const Povm& m);

// Constructions ---------------------------------------------------------------

/// {(2/3)|psi_j><psi_j|}, |psi_j> = cos(2 pi j/3)|0> + sin(2 pi j/3)|1>.
Povm trine_povm();

/// E_k = T^{-1/2} |v_k><v_k| T^{-1/2} with T = sum_k |v_k><v_k|. Throws
/// InvalidInput("chart") when T has an eigenvalue below `min_eigenvalue`.
Povm povm_from_vectors(std::span<const std::vector<Complex>> vectors, double min_eigenvalue = 1e-8);

/// Splits every element into rank-1 pieces lambda|u><u| (eigenvalues below
/// 1e-12 dropped) and pads with zero elements until the count is a multiple
/// of dim(). `parent` receives the source outcome of each piece (or
/// SIZE_MAX for padding).
Povm refine_to_rank_one(const Povm& m, std::vector<std::size_t>* parent = nullptr);

/// Two outcomes {E, 1 - E} with E = Q diag(u) Q^dagger, Q Haar-like and u
/// uniform in [0, 1].
Povm random_two_outcome_povm(std::size_t dim, CounterRng& rng);
/// Rank-1 POVM of `outcomes` elements from Gaussian vectors through the chart.
Povm random_rank_one_povm(std::size_t dim, std::size_t outcomes, CounterRng& rng);
ProjectiveMeasurement random_projective(std::size_t dim, CounterRng& rng);

}  // namespace corrbound
