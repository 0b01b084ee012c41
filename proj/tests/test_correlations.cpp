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


#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "corrbound/correlations.hpp"
#include "corrbound/entropy.hpp"
#include "oracles.hpp"

using namespace corrbound;

namespace {

const DimSplit k22 = DimSplit::bipartite(2, 2);
const DimSplit k23 = DimSplit::bipartite(2, 3);

OptimizerOptions projective(std::size_t restarts, std::uint64_t seed = 0) {
  OptimizerOptions o;
  o.restarts = restarts;
  o.seed = seed;
  return o;
}

DensityMatrix perfect_bit() {
  const std::array<double, 4> table{0.5, 0, 0, 0.5};
  return classical_classical(table, k22);
}

}  // namespace

TEST_CASE("mutual information") {
  CHECK(std::abs(mutual_information(family("product", 0.7))) < 1e-12);
  CHECK(std::abs(mutual_information(bell_phi_plus()) - 2.0) < 1e-12);
  CHECK(std::abs(mutual_information(perfect_bit()) - 1.0) < 1e-12);
  CHECK(std::abs(mutual_information(werner(0.5)) - oracle::kWerner05Mi) < 1e-12);
}

TEST_CASE("qubit grid oracle") {
  const auto prod = qubit_grid_oracle(family("product", 0.7));
  CHECK(std::abs(prod.classical_j) < 1e-12);
  const auto bell = qubit_grid_oracle(bell_phi_plus());
  CHECK(std::abs(bell.classical_j - 1.0) < 1e-12);
  // rotational invariance makes every grid point optimal for Werner states
  const auto w = qubit_grid_oracle(werner(0.5));
  CHECK(std::abs(w.classical_j - oracle::kWerner05J) < 1e-12);
  CHECK(std::abs(w.classical_j - oracle::werner_j(0.5)) < 1e-12);
  CHECK_THROWS_AS(qubit_grid_oracle(random_mixed_ginibre(k23, 2, 1)), InvalidInput);
  CHECK_THROWS_AS(qubit_grid_oracle(werner(0.5), 1, 10), InvalidInput);
}

TEST_CASE("optimizer on reference states") {
  SUBCASE("bell") {
    const auto r = optimize_classical_correlations(bell_phi_plus(), projective(8));
    CHECK(std::abs(r.classical_j - 1.0) <= 1e-6);
  }
  SUBCASE("perfect classical bit prefers the diagonal basis") {
    const auto r = optimize_classical_correlations(perfect_bit(), projective(8));
    CHECK(std::abs(r.classical_j - 1.0) <= 1e-6);
    REQUIRE(r.best.bloch_angles.has_value());
    CHECK(r.best.bloch_angles->first < 1e-2);
    CHECK(std::abs(qubit_grid_oracle(perfect_bit()).classical_j - 1.0) < 1e-12);
  }
  SUBCASE("werner(0.5) against the fine grid") {
    const auto r = optimize_classical_correlations(werner(0.5), projective(32, 7));
    const auto grid = qubit_grid_oracle(werner(0.5), 721, 1440);
    CHECK(std::abs(r.classical_j - grid.classical_j) <= 1e-4);
  }
  SUBCASE("record contents") {
    const auto r = optimize_classical_correlations(werner(0.3), projective(4, 3));
    CHECK(r.start_values.size() == 5);
    CHECK(r.candidate_values.size() == 5);
    CHECK(r.best.candidate < 5);
    CHECK(r.best.elements.size() == 2);
    CHECK(r.evaluations > 0);
    CHECK_THROWS_AS(optimize_classical_correlations(werner(0.3), projective(0)), InvalidInput);
  }
}

TEST_CASE("optimizer soundness and grid regression set") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto rho = s % 4 == 0 ? random_pure_haar(k22, s) : random_mixed_ginibre(k22, 1 + s % 4, s);
    const auto r = optimize_classical_correlations(rho, projective(8, s));
    for (double v : r.start_values) CHECK(r.classical_j >= v - 1e-15);
    for (double v : r.candidate_values) CHECK(r.classical_j >= v - 1e-12);
    const auto grid = qubit_grid_oracle(rho, 361, 720);
    CAPTURE(s);
    CHECK(std::abs(r.classical_j - grid.classical_j) <= 1e-4);
  }
}

TEST_CASE("more restarts never lose") {
  for (std::uint64_t s = 0; s < 6; ++s) {
    const auto rho = random_mixed_ginibre(k23, 3, 100 + s);
    const double j4 = optimize_classical_correlations(rho, projective(4, s)).classical_j;
    const double j8 = optimize_classical_correlations(rho, projective(8, s)).classical_j;
    CHECK(j8 >= j4 - 1e-12);
  }
}

TEST_CASE("worker count does not change results") {
  const auto rho = random_mixed_ginibre(k23, 4, 77);
  auto a = projective(6, 5);
  auto b = a;
  b.workers = 3;
  const auto ra = optimize_classical_correlations(rho, a);
  const auto rb = optimize_classical_correlations(rho, b);
  CHECK(ra.classical_j == rb.classical_j);
  CHECK(ra.best.parameters == rb.best.parameters);
  CHECK(ra.candidate_values == rb.candidate_values);
}

TEST_CASE("POVM class") {
  OptimizerOptions o;
  o.measurement_class = MeasurementClass::kPovm;
  o.restarts = 4;
  const auto bell = optimize_classical_correlations(bell_phi_plus(), o);
  CHECK(std::abs(bell.classical_j - 1.0) <= 1e-6);
  CHECK(bell.best.chart == "povm_vectors");
  CHECK(bell.best.parameters.size() == 2 * 2 * 4);
  CHECK_FALSE(bell.best.bloch_angles.has_value());

  const auto rho = random_mixed_ginibre(k22, 3, 12);
  const double j_proj = optimize_classical_correlations(rho, projective(8)).classical_j;
  const double j_povm = optimize_classical_correlations(rho, o).classical_j;
  CHECK(j_povm >= j_proj - 1e-5);
  CHECK(j_povm <= std::min(von_neumann_entropy(rho.marginal_a()), von_neumann_entropy(rho.marginal_b())) + 1e-9);
}

TEST_CASE("discord reports") {
  SUBCASE("product state") {
    const auto r = quantum_discord(family("product", 0.6), projective(8));
    CHECK(std::abs(r.mutual_information) <= 1e-6);
    CHECK(std::abs(r.classical_j) <= 1e-6);
    CHECK(std::abs(r.discord) <= 1e-6);
    CHECK(std::abs(r.bound_margin - std::min(r.s_a, r.s_b)) <= 1e-6);
  }
  SUBCASE("bell state") {
    const auto r = quantum_discord(bell_phi_plus(), projective(8));
    CHECK(std::abs(r.mutual_information - 2.0) <= 1e-6);
    CHECK(std::abs(r.classical_j - 1.0) <= 1e-6);
    CHECK(std::abs(r.discord - 1.0) <= 1e-6);
    CHECK(r.dims == "2x2");
  }
  SUBCASE("separable werner state has discord") {
    const auto r = quantum_discord(werner(0.3), projective(8));
    CHECK(r.discord > 1e-3);
    CHECK(std::abs(r.mutual_information - oracle::kWerner03Mi) < 1e-12);
    CHECK(std::abs(r.classical_j - oracle::kWerner03J) < 1e-9);
    CHECK(std::abs(r.discord - oracle::kWerner03Discord) < 1e-9);
  }
  SUBCASE("werner(0.5) discord") {
    const auto r = quantum_discord(werner(0.5), projective(8));
    CHECK(std::abs(r.discord - oracle::kWerner05Discord) < 1e-9);
  }
  SUBCASE("report identities") {
    for (std::uint64_t s = 0; s < 5; ++s) {
      const auto r = quantum_discord(random_mixed_ginibre(k23, 6, s), projective(4, s));
      CHECK(r.discord == r.mutual_information - r.classical_j);
      CHECK(r.classical_j >= 0.0);
      CHECK(r.mutual_information >= -1e-9);
      CHECK(r.bound_margin == std::min(r.s_a, r.s_b) - r.classical_j);
      CHECK(r.discord_sb_margin == r.s_b - r.discord);
      CHECK(r.optimizer_restarts == 4);
      CHECK(r.seed == s);
    }
  }
}

TEST_CASE("bound report") {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto b = bound_report(random_pure_haar(k22, s), projective(8, s));
    CHECK(std::abs(b.bound_margin) <= 1e-3);
    CHECK(b.bound_margin >= -1e-9);
  }
  const auto prod = family("product", 0.9);
  const auto b = bound_report(prod, projective(4));
  CHECK(std::abs(b.bound_margin - von_neumann_entropy(prod.marginal_a())) <= 1e-6);
}

TEST_CASE("names and signs") {
  CHECK(parse_measurement_class("projective") == MeasurementClass::kProjective);
  CHECK(parse_measurement_class("povm") == MeasurementClass::kPovm);
  CHECK(to_string(MeasurementClass::kPovm) == "povm");
  CHECK_THROWS_AS(parse_measurement_class("weak"), InvalidInput);
  CHECK(sign_with_tolerance(1e-3) == 1);
  CHECK(sign_with_tolerance(-1e-3) == -1);
  CHECK(sign_with_tolerance(1e-12) == 0);
}
