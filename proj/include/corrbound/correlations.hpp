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
#include <optional>
#include <string>
#include <vector>

#include "corrbound/direct_search.hpp"
#include "corrbound/measurement.hpp"
#include "corrbound/state_library.hpp"

namespace corrbound {

enum class MeasurementClass { kProjective, kPovm };

std::string to_string(MeasurementClass c);
/// Accepts "projective" or "povm".
MeasurementClass parse_measurement_class(const std::string& name);

/// S(rho_A) + S(rho_B) - S(rho_AB)
double mutual_information(const DensityMatrix& rho);

struct GridOptimum {
  double classical_j = 0.0;
  double theta = 0.0;
  double phi = 0.0;
};

/// Exhaustive search over qubit projective measurements on B: theta takes
/// n_theta evenly spaced values in [0, pi] (endpoints included), phi takes
/// n_phi values k 2pi/n_phi. The first maximum in (theta, phi) scan order
/// wins. Requires dim_b == 2.
GridOptimum qubit_grid_oracle(const DensityMatrix& rho, std::size_t n_theta = 181, std::size_t n_phi = 360);

struct OptimizerOptions {
  MeasurementClass measurement_class = MeasurementClass::kProjective;
  std::size_t restarts = 32;
  std::uint64_t seed = 0;
  /// Number of POVM outcomes; 0 means dim_b^2.
  std::size_t povm_outcomes = 0;
  /// For projective measurements on a qubit B, add one candidate that starts
  /// from the best point of a coarse Bloch-angle grid and refines it.
  bool qubit_grid_refine = true;
  std::size_t refine_grid_theta = 37;
  std::size_t refine_grid_phi = 72;
  DirectSearchOptions search{};
  /// Restarts run concurrently on this many threads.
  std::size_t workers = 1;
};

/// How the winning measurement was parametrized and what it is.
struct MeasurementRecord {
  MeasurementClass measurement_class = MeasurementClass::kProjective;
  /// "unitary_exp" (u = exp(iH(x))), "bloch" (theta, phi) or "povm_vectors".
  std::string chart;
  std::vector<double> parameters;
  /// Index of the winning candidate; == restarts for the grid-refine one.
  std::size_t candidate = 0;
  std::vector<ComplexMatrix> elements;
  /// Bloch angles of the first basis vector, normalized to theta <= pi/2,
  /// for projective measurements on a qubit.
  std::optional<std::pair<double, double>> bloch_angles;
};

struct ClassicalOptimum {
  double classical_j = 0.0;
  MeasurementRecord best;
  /// J at each candidate's start point and after its local search.
  std::vector<double> start_values;
  std::vector<double> candidate_values;
  std::size_t evaluations = 0;
};

/// Maximizes S(rho_A) - sum_k p_k S(rho_{A|k}) over the chosen measurement
/// class on B by multi-start simplex search. Deterministic per
/// (seed, restarts) and independent of `workers`.
ClassicalOptimum optimize_classical_correlations(const DensityMatrix& rho, const OptimizerOptions& options = {});

struct CorrelationReport {
  std::string dims;
  double s_a = 0.0;
  double s_b = 0.0;
  double s_ab = 0.0;
  double mutual_information = 0.0;
  double classical_j = 0.0;
  double discord = 0.0;
  double bound_margin = 0.0;       // min(s_a, s_b) - classical_j
  double discord_sb_margin = 0.0;  // s_b - discord
  double discord_minus_sa = 0.0;   // discord - s_a (sign recorded by scans)
  MeasurementRecord best_measurement;
  std::size_t optimizer_restarts = 0;
  std::uint64_t seed = 0;
  MeasurementClass measurement_class = MeasurementClass::kProjective;
};

/// Full report; discord = mutual_information - classical_j exactly.
CorrelationReport quantum_discord(const DensityMatrix& rho, const OptimizerOptions& options = {});

struct BoundMargins {
  double bound_margin = 0.0;
  double discord_sb_margin = 0.0;
};

BoundMargins bound_report(const DensityMatrix& rho, const OptimizerOptions& options = {});

/// -1, 0 or +1 with a zero band of half-width `tol`.
int sign_with_tolerance(double x, double tol = 1e-9);

}  // namespace corrbound
