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

// Neumark and Stinespring dilations of a measurement on B, and a numerical
// walk through the entropy argument bounding J(A:B) by S(rho_B):
//
//   rho_ABB~       = rho_AB (x) |w><w|
//   rho'_ABB~C     = (1 (x) U)(rho_ABB~ (x) |c0><c0|)(1 (x) U^dagger)
//   S(A') + S(BB~') <= S(AC') + S(BB~C')          (strong subadditivity)
//
// Every intermediate state is kept, each identity is checked with a residual,
// and nothing is thrown for a failed check: the verdict reports it.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "corrbound/measurement.hpp"
#include "corrbound/state_library.hpp"

namespace corrbound {

enum class NeumarkConstruction {
  kCanonical,  // ancilla = #outcomes, projectors of rank dim_b built from sqrt(E_k)
  kRankOne,    // rank-1 refinement, padded to a multiple of dim_b, rank-1 projectors
};

std::string to_string(NeumarkConstruction c);
NeumarkConstruction parse_construction(const std::string& name);

struct NeumarkExtension {
  /// The POVM the projectors realize. Equals the input for the canonical
  /// construction; for rank-1 it is the refined and padded POVM.
  Povm source;
  /// For each outcome of `source`, the input outcome it refines (SIZE_MAX
  /// for padding elements).
  std::vector<std::size_t> parent;
  std::size_t dim_b = 0;
  std::size_t ancilla_dim = 0;
  std::vector<Complex> omega;
  ProjectiveMeasurement projectors;
  NeumarkConstruction construction = NeumarkConstruction::kCanonical;

  /// max over k of |(1 (x) <w|) Pi_k (1 (x) |w>) - E_k| entries.
  double compression_defect() const;
};

/// `omega` defaults to the first standard basis vector of the ancilla.
NeumarkExtension neumark_extend(const Povm& m, NeumarkConstruction construction,
                                const std::optional<std::vector<Complex>>& omega = std::nullopt);

struct NeumarkResiduals {
  double probability = 0.0;         // max_k |p_k(E) - p_k(Pi)|
  double conditional = 0.0;         // max_k max-abs(rho_{A|k}(E) - rho_{A|k}(Pi))
  double coarse_probability = 0.0;  // refined pieces summed back onto input outcomes
};

/// p_k and rho_{A|k} from the POVM on rho_AB against the projectors on
/// rho_AB (x) |w><w|.
NeumarkResiduals verify_neumark_consistency(const DensityMatrix& rho, const NeumarkExtension& ext,
                                            const Povm* original = nullptr);

struct StinespringDilation {
  ProjectiveMeasurement measurement;
  std::size_t c_dim = 0;       // one register state |c_k> per outcome; |c_0> is the initial state
  ComplexMatrix isometry_v;    // (D m) x D, V|v> = sum_k Pi_k|v> (x) |c_k>
  ComplexMatrix unitary_u;     // (D m) x (D m), U(|v> (x) |c_0>) = V|v>

  std::vector<Complex> c_basis(std::size_t k) const;
};

StinespringDilation stinespring_dilate(const ProjectiveMeasurement& m);

struct ProofOptions {
  NeumarkConstruction construction = NeumarkConstruction::kRankOne;
  /// Upper bound on d_A * d_B * ancilla_dim * outcomes.
  std::size_t dimension_cap = 4096;
  std::optional<std::vector<Complex>> omega;
};

struct ProofTrace {
  DensityMatrix rho_ab;
  Povm povm;  // as given
  NeumarkExtension neumark;
  StinespringDilation stinespring;
  ConditionalEnsemble ensemble;  // of neumark.source on rho_ab

  std::size_t dim_a = 0;
  std::size_t dim_b = 0;
  std::size_t ancilla_dim = 0;
  std::size_t c_dim = 0;

  DensityMatrix rho_a;
  DensityMatrix rho_b;
  DensityMatrix rho_abb;          // rho_AB (x) |w><w|
  DensityMatrix rho_bb;           // Tr_A rho_ABB~
  DensityMatrix rho_abb_prime;    // sum_k (1 (x) Pi_k) rho_ABB~ (1 (x) Pi_k)
  DensityMatrix rho_ab_prime;     // Tr_B~ rho'_ABB~
  DensityMatrix rho_abbc_prime;
  DensityMatrix rho_ac_prime;
  DensityMatrix rho_a_prime;
  DensityMatrix rho_bbc_prime;
  DensityMatrix rho_bb_prime;

  double s_a = 0.0;
  double s_b = 0.0;
  double s_bb = 0.0;
  double s_ac_prime = 0.0;
  double s_a_prime = 0.0;
  double s_bbc_prime = 0.0;
  double s_bb_prime = 0.0;
  double shannon_p = 0.0;                 // H({p_k})
  double average_conditional_entropy = 0.0;  // sum_k p_k S(rho_{A|k})
  double bb_block_entropy = 0.0;          // sum_k p_k S(Pi_k rho_BB~ Pi_k / p_k)

  struct Residuals {
    double neumark_compression = 0.0;
    double neumark_probability = 0.0;
    double neumark_conditional = 0.0;
    double double_sum_vs_unitary = 0.0;   // two forms of rho'_ABB~C
    double ac_block_form = 0.0;           // Tr_BB~ rho'_ABB~C vs sum_k p_k rho_{A|k} (x) |c_k><c_k|
    double a_prime_vs_a = 0.0;
    double ensemble_average_vs_a = 0.0;   // sum_k p_k rho_{A|k} vs rho_A
    double bbc_spectrum = 0.0;            // spectra of rho'_BB~C and rho_BB~
    double rank_one_identity = 0.0;       // rho'_BB~ vs sum_k p_k Pi_k
    double literal_vs_luders = 0.0;       // sum_k (1 (x) E_k) rho_AB vs Tr_B~ rho'_ABB~
  } residuals;

  double ssa_slack = 0.0;
  double final_margin_sb = 0.0;
  double final_margin_sa = 0.0;
};

/// Throws InvalidInput("dimension_cap") when the dilated space is too large.
ProofTrace build_proof_trace(const DensityMatrix& rho, const Povm& m, const ProofOptions& options = {});

struct ProofCheck {
  std::string name;
  std::string description;
  /// Equality checks: |lhs - rhs| or a max-abs residual, passes when <= tolerance.
  /// Bound checks: the slack, passes when >= -tolerance.
  double value = 0.0;
  double tolerance = 0.0;
  bool is_bound = false;
  bool required = true;
  bool passed = false;
};

struct ProofVerdict {
  std::vector<ProofCheck> checks;
  bool all_required_passed = false;

  const ProofCheck& check(const std::string& name) const;
};

ProofVerdict verify_proof(const ProofTrace& trace);

}  // namespace corrbound
