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
#include <numbers>
#include <vector>

#include "corrbound/entropy.hpp"
#include "corrbound/measurement.hpp"
#include "corrbound/random.hpp"
#include "corrbound/state_library.hpp"
#include "oracles.hpp"

using namespace corrbound;

namespace {

const DimSplit k22 = DimSplit::bipartite(2, 2);
const DimSplit k23 = DimSplit::bipartite(2, 3);

ComplexMatrix ket_bra(std::vector<Complex> v) { return ComplexMatrix::outer(v, v); }

std::string failed_invariant(std::vector<ComplexMatrix> el) {
  try {
    Povm::from_elements(std::move(el));
  } catch (const InvalidInput& e) {
    return e.invariant();
  }
  return "";
}

}  // namespace

TEST_CASE("POVM validation") {
  CHECK_NOTHROW(Povm::computational(3));
  CHECK_NOTHROW(trine_povm());
  const std::array<double, 2> half{0.5, 0.5};
  CHECK(failed_invariant({ComplexMatrix::diagonal(half)}) == "completeness");
  const std::array<double, 2> neg{1.5, 0.0};
  const std::array<double, 2> rest{-0.5, 1.0};
  CHECK(failed_invariant({ComplexMatrix::diagonal(neg), ComplexMatrix::diagonal(rest)}) == "psd");
  CHECK(failed_invariant({ComplexMatrix::identity(2), ComplexMatrix(3, 3)}) == "dimension");
  CHECK(failed_invariant({}) == "outcomes");
  ComplexMatrix skew(2, 2);
  skew(0, 1) = 0.1;
  CHECK(failed_invariant({ComplexMatrix::identity(2) + skew, skew * Complex(-1.0)}) == "hermitian");
  CHECK(trine_povm().completeness_defect() < 1e-15);
}

TEST_CASE("projective measurements") {
  const auto comp = projective_from_unitary(ComplexMatrix::identity(2));
  CHECK(comp[0] == ket_bra({1, 0}));
  CHECK(comp[1] == ket_bra({0, 1}));

  const double s = 1.0 / std::sqrt(2.0);
  const auto had = projective_from_unitary(ComplexMatrix(2, 2, {s, s, s, -s}));
  CHECK(max_abs_diff(had[0], ket_bra({s, s})) < 1e-15);
  CHECK(max_abs_diff(had[1], ket_bra({s, -s})) < 1e-15);

  CounterRng rng(19);
  for (int t = 0; t < 10; ++t) {
    const auto pm = projective_from_unitary(random_unitary(3, rng));
    CHECK(pm.orthogonality_defect() <= 1e-9);
    CHECK(pm.completeness_defect() <= 1e-10);
  }
  CHECK_THROWS_AS(projective_from_unitary(ComplexMatrix(2, 2, {1, 1, 0, 1})), InvalidInput);
  CHECK_THROWS_AS(ProjectiveMeasurement::from_projectors({ComplexMatrix::identity(2), ket_bra({1, 0})}), InvalidInput);
}

TEST_CASE("qubit Bloch-angle measurements") {
  const auto z = qubit_projective(0, 0);
  CHECK(max_abs_diff(z[0], ket_bra({1, 0})) < 1e-15);
  CHECK(max_abs_diff(z[1], ket_bra({0, 1})) < 1e-15);
  const double s = 1.0 / std::sqrt(2.0);
  const auto x = qubit_projective(std::numbers::pi / 2, 0);
  CHECK(max_abs_diff(x[0], ket_bra({s, s})) < 1e-15);
  CHECK(max_abs_diff(x[1], ket_bra({s, -s})) < 1e-15);
  for (auto [t, p] : {std::pair{0.3, 1.1}, std::pair{1.2, 4.0}, std::pair{2.9, 0.2}}) {
    const auto a = qubit_projective(t, p);
    const auto b = qubit_projective(std::numbers::pi - t, p + std::numbers::pi);
    CHECK(max_abs_diff(a[0], b[1]) < 1e-14);
    CHECK(max_abs_diff(a[1], b[0]) < 1e-14);
  }
}

TEST_CASE("conditioning on B") {
  SUBCASE("bell state, computational basis") {
    const auto ens = condition_on_b(bell_phi_plus(), Povm::computational(2));
    CHECK(std::abs(ens.probabilities[0] - 0.5) < 1e-15);
    CHECK(std::abs(ens.probabilities[1] - 0.5) < 1e-15);
    CHECK(max_abs_diff(ens.conditionals[0].matrix(), ket_bra({1, 0})) < 1e-15);
    CHECK(max_abs_diff(ens.conditionals[1].matrix(), ket_bra({0, 1})) < 1e-15);
  }
  SUBCASE("product states give the marginal for every outcome") {
    CounterRng rng(2);
    for (std::uint64_t s = 0; s < 5; ++s) {
      const auto ra = random_mixed_ginibre(DimSplit::single(2), 2, s);
      const auto rb = random_mixed_ginibre(DimSplit::single(3), 3, s + 50);
      const auto ens = condition_on_b(product_state(ra, rb), random_rank_one_povm(3, 9, rng));
      for (const auto& c : ens.conditionals) CHECK(max_abs_diff(c.matrix(), ra.matrix()) < 1e-12);
    }
  }
  SUBCASE("werner(0.5), computational basis, against index sums") {
    const auto rho = werner(0.5);
    const auto m = Povm::computational(2);
    const auto ens = condition_on_b(rho, m);
    for (std::size_t k = 0; k < 2; ++k) {
      const auto un = oracle::unnormalized_conditional(rho.matrix(), m[k], 2, 2);
      const double p = un.trace().real();
      CHECK(std::abs(p - 0.5) < 1e-15);
      CHECK(std::abs(ens.probabilities[k] - p) < 1e-15);
      CHECK(oracle::max_abs_diff(ens.conditionals[k].matrix(), un * Complex(1.0 / p)) < 1e-15);
    }
    const std::array<double, 2> c0{0.25, 0.75};
    const std::array<double, 2> c1{0.75, 0.25};
    CHECK(max_abs_diff(ens.conditionals[0].matrix(), ComplexMatrix::diagonal(c0)) < 1e-15);
    CHECK(max_abs_diff(ens.conditionals[1].matrix(), ComplexMatrix::diagonal(c1)) < 1e-15);
  }
  SUBCASE("random states and POVMs against index sums") {
    CounterRng rng(404);
    for (std::uint64_t s = 0; s < 20; ++s) {
      const auto rho = random_mixed_ginibre(k23, 1 + s % 6, s);
      const auto m = random_rank_one_povm(3, 4, rng);
      const auto ens = condition_on_b(rho, m);
      for (std::size_t i = 0; i < ens.retained.size(); ++i) {
        const std::size_t k = ens.retained[i];
        const auto un = oracle::unnormalized_conditional(rho.matrix(), m[k], 2, 3);
        CHECK(std::abs(ens.probabilities[k] - un.trace().real()) < 1e-14);
        CHECK(oracle::max_abs_diff(ens.conditionals[i].matrix(), un * Complex(1.0 / un.trace().real())) < 1e-12);
      }
    }
  }
  SUBCASE("zero-probability outcomes are dropped and recorded") {
    const std::vector<Complex> e00{1, 0, 0, 0};
    const auto ens = condition_on_b(pure_from_vector(e00, k22), Povm::computational(2));
    CHECK(ens.dropped == std::vector<std::size_t>{1});
    CHECK(ens.retained == std::vector<std::size_t>{0});
    CHECK(ens.probabilities[1] == 0.0);
    CHECK(ens.average_conditional_entropy() == 0.0);
  }
  SUBCASE("dimension mismatch") {
    CHECK_THROWS_AS(condition_on_b(bell_phi_plus(), Povm::computational(3)), InvalidInput);
  }
}

TEST_CASE("fixed-measurement classical information") {
  CHECK(std::abs(fixed_measurement_classical_info(bell_phi_plus(), Povm::computational(2)) - 1.0) < 1e-14);
  CounterRng rng(6);
  const auto prod = family("product", 0.8);
  const auto mm = maximally_mixed(k22);
  for (int t = 0; t < 5; ++t) {
    const auto m = random_rank_one_povm(2, 4, rng);
    CHECK(std::abs(fixed_measurement_classical_info(prod, m)) < 1e-12);
    CHECK(std::abs(fixed_measurement_classical_info(mm, m)) < 1e-12);
  }
}

TEST_CASE("ensemble properties over random states and measurements") {
  CounterRng rng(1234);
  std::size_t pairs = 0;
  for (const auto& split : {k22, k23}) {
    for (std::uint64_t s = 0; s < 50; ++s, ++pairs) {
      const auto rho = random_mixed_ginibre(split, 1 + s % split.total(), 1000 * split.dim_b() + s);
      const double s_a = von_neumann_entropy(rho.marginal_a());
      const double s_b = von_neumann_entropy(rho.marginal_b());

      const auto proj = random_projective(split.dim_b(), rng).as_povm();
      const double j_proj = fixed_measurement_classical_info(rho, proj);
      CHECK(j_proj >= -1e-9);
      CHECK(j_proj <= std::min(s_a, s_b) + 1e-9);

      const auto gen = random_rank_one_povm(split.dim_b(), split.dim_b() * split.dim_b(), rng);
      CHECK(fixed_measurement_classical_info(rho, gen) <= std::min(s_a, s_b) + 1e-9);

      for (const auto& m : {proj, gen, random_two_outcome_povm(split.dim_b(), rng)}) {
        const auto ens = condition_on_b(rho, m);
        CHECK(max_abs_diff(ens.average_state(), rho.marginal_a().matrix()) <= 1e-10);
        double total = 0.0;
        for (double p : ens.probabilities) {
          CHECK(p >= 0.0);
          total += p;
        }
        CHECK(std::abs(total - 1.0) <= 1e-9);
      }
    }
  }
  CHECK(pairs == 100);
}

TEST_CASE("POVM chart") {
  std::vector<std::vector<Complex>> vecs{{1, 0}, {0, 1}, {1, 1}};
  const auto m = povm_from_vectors(vecs);
  CHECK(m.size() == 3);
  CHECK(m.completeness_defect() < 1e-14);
  std::vector<std::vector<Complex>> degenerate{{1, 0}, {2, 0}};
  try {
    povm_from_vectors(degenerate);
    FAIL("expected a chart rejection");
  } catch (const InvalidInput& e) {
    CHECK(e.invariant() == "chart");
  }
}

TEST_CASE("rank-1 refinement") {
  std::vector<std::size_t> parent;
  const auto r = refine_to_rank_one(Povm::computational(2), &parent);
  CHECK(r.size() == 2);
  const auto t = refine_to_rank_one(trine_povm(), &parent);
  CHECK(t.size() == 4);
  CHECK(parent[0] == 0);
  CHECK(parent[2] == 2);
  CHECK(parent[3] == SIZE_MAX);
  CHECK(max_abs(t[3]) == 0.0);
  CHECK(t.completeness_defect() < 1e-14);

  CounterRng rng(8);
  const auto two = random_two_outcome_povm(3, rng);
  const auto refined = refine_to_rank_one(two, &parent);
  CHECK(refined.size() % 3 == 0);
  CHECK(refined.completeness_defect() < 1e-12);
  for (std::size_t k = 0; k < refined.size(); ++k) {
    const auto es = hermitian_eigensystem(refined[k]);
    std::size_t rank = 0;
    for (double v : es.values) rank += v > 1e-10;
    CHECK(rank <= 1);
  }
  // pieces sum back to their parents
  std::vector<ComplexMatrix> sums(2, ComplexMatrix(3, 3));
  for (std::size_t k = 0; k < refined.size(); ++k)
    if (parent[k] < 2) sums[parent[k]] += refined[k];
  CHECK(max_abs_diff(sums[0], two[0]) < 1e-12);
  CHECK(max_abs_diff(sums[1], two[1]) < 1e-12);
}
