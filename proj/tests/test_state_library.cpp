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

#include <array>
#include <cmath>
#include <vector>

#include "corrbound/state_library.hpp"
#include "oracles.hpp"

using namespace corrbound;

namespace {

const DimSplit k22 = DimSplit::bipartite(2, 2);
const DimSplit k23 = DimSplit::bipartite(2, 3);
const DimSplit k33 = DimSplit::bipartite(3, 3);

std::string failed_invariant(const ComplexMatrix& m, const DimSplit& s) {
  try {
    DensityMatrix::from_matrix(m, s);
  } catch (const InvalidInput& e) {
    return e.invariant();
  }
  return "";
}

void check_valid(const DensityMatrix& rho) {
  const auto& m = rho.matrix();
  CHECK(hermiticity_defect(m) <= 1e-10);
  CHECK(std::abs(m.trace() - 1.0) <= 1e-10);
  for (double v : rho.spectrum()) CHECK(v >= -1e-10);
  CHECK(m.rows() == rho.split().total());
}

}  // namespace

TEST_CASE("from_matrix validation") {
  CHECK_NOTHROW(DensityMatrix::from_matrix(ComplexMatrix::identity(4) * Complex(0.25), k22));
  const std::array<double, 4> neg{0.6, 0.6, -0.1, -0.1};
  CHECK(failed_invariant(ComplexMatrix::diagonal(neg), k22) == "psd");
  const std::array<double, 4> heavy{0.5, 0.5, 0.5, 0.5};
  CHECK(failed_invariant(ComplexMatrix::diagonal(heavy), k22) == "trace");
  ComplexMatrix skew = ComplexMatrix::identity(4) * Complex(0.25);
  skew(0, 1) = 0.1;
  CHECK(failed_invariant(skew, k22) == "hermitian");
  CHECK(failed_invariant(ComplexMatrix::identity(6) * Complex(1.0 / 6), k22) == "dimension");
  CHECK(failed_invariant(ComplexMatrix(2, 3), k22) == "square");

  SUBCASE("tiny negative eigenvalues are clipped and the spectrum renormalized") {
    const std::array<double, 4> d{0.5 + 5e-11, 0.5, -5e-11, 0.0};
    const auto rho = DensityMatrix::from_matrix(ComplexMatrix::diagonal(d), k22);
    for (double v : rho.spectrum()) CHECK(v >= 0.0);
    double sum = 0.0;
    for (double v : rho.spectrum()) sum += v;
    CHECK(std::abs(sum - 1.0) < 1e-15);
    check_valid(rho);
  }
}

TEST_CASE("pure states") {
  const std::vector<Complex> phi{1.0 / std::sqrt(2.0), 0, 0, 1.0 / std::sqrt(2.0)};
  const auto bell = pure_from_vector(phi, k22);
  CHECK(max_abs_diff(bell.matrix(), bell_phi_plus().matrix()) < 1e-15);
  CHECK(std::abs(bell.purity() - 1.0) < 1e-14);

  const std::vector<Complex> e00{1, 0, 0, 0};
  const auto p = pure_from_vector(e00, k22);
  CHECK(p.matrix()(0, 0) == Complex(1.0));
  CHECK(std::abs(p.marginal_a().purity() - 1.0) < 1e-15);

  const std::vector<Complex> scaled{2, 0, 0, 2};
  CHECK(max_abs_diff(pure_from_vector(scaled, k22).matrix(), bell.matrix()) < 1e-15);

  const std::vector<Complex> zero(4);
  CHECK_THROWS_AS(pure_from_vector(zero, k22), InvalidInput);
  CHECK_THROWS_AS(pure_from_vector(e00, k23), InvalidInput);
}

TEST_CASE("haar random pure states") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto rho = random_pure_haar(k23, seed);
    CHECK(std::abs(rho.purity() - 1.0) <= 1e-12);
    check_valid(rho);
  }
  for (std::uint64_t s = 0; s < 10; ++s) {
    CHECK(max_abs_diff(random_pure_haar(k22, s).matrix(), random_pure_haar(k22, s + 1000).matrix()) > 1e-6);
  }
  CHECK(random_pure_haar(k33, 42).matrix() == random_pure_haar(k33, 42).matrix());
}

TEST_CASE("ginibre random mixed states") {
  CHECK(std::abs(random_mixed_ginibre(k22, 1, 5).purity() - 1.0) <= 1e-12);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto rho = random_mixed_ginibre(k22, 4, seed);
    const auto es = hermitian_eigensystem(rho.matrix());
    for (double v : es.values) CHECK(v > 0.0);
    check_valid(rho);
    check_valid(random_mixed_ginibre(k33, 3, seed));
  }
  CHECK(random_mixed_ginibre(k23, 6, 9).matrix() == random_mixed_ginibre(k23, 6, 9).matrix());
  CHECK_THROWS_AS(random_mixed_ginibre(k22, 0, 1), InvalidInput);
  CHECK_THROWS_AS(random_mixed_ginibre(k22, 5, 1), InvalidInput);
}

TEST_CASE("named families") {
  CHECK(max_abs_diff(werner(0.0).matrix(), ComplexMatrix::identity(4) * Complex(0.25)) < 1e-16);
  const std::vector<Complex> singlet{0, 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 0};
  CHECK(max_abs_diff(werner(1.0).matrix(), ComplexMatrix::outer(singlet, singlet)) < 1e-15);

  const std::array<double, 4> table{0.5, 0, 0, 0.5};
  const std::array<double, 4> diag{0.5, 0, 0, 0.5};
  CHECK(classical_classical(table, k22).matrix() == ComplexMatrix::diagonal(diag));

  SUBCASE("werner spectrum") {
    for (double z : {0.0, 0.5, 1.0}) {
      const auto es = hermitian_eigensystem(werner(z).matrix());
      for (int i = 0; i < 3; ++i) CHECK(std::abs(es.values[i] - (1 - z) / 4) < 1e-14);
      CHECK(std::abs(es.values[3] - (1 + 3 * z) / 4) < 1e-14);
    }
  }
  SUBCASE("family names and ranges") {
    CHECK(family("bell_phi_plus", NAN).matrix() == bell_phi_plus().matrix());
    CHECK(family("werner", 0.3).matrix() == werner(0.3).matrix());
    CHECK(family("maximally_mixed", NAN).matrix() == maximally_mixed(k22).matrix());
    const auto prod = family("product", 0.75);
    CHECK(std::abs(prod.matrix()(0, 0).real() - 0.5625) < 1e-15);
    CHECK(family("classical_classical", 0.5).matrix() == ComplexMatrix::diagonal(diag));
    CHECK_THROWS_AS(family("werner", 1.5), InvalidInput);
    CHECK_THROWS_AS(family("werner", -0.1), InvalidInput);
    CHECK_THROWS_AS(family("ghz", NAN), InvalidInput);
    const std::array<double, 4> bad{0.5, 0.5, 0.5, -0.5};
    CHECK_THROWS_AS(classical_classical(bad, k22), InvalidInput);
  }
}

TEST_CASE("every generated state and its marginals are valid") {
  std::vector<DensityMatrix> states{bell_phi_plus(), werner(0.3), maximally_mixed(k23), family("product", 0.9)};
  for (std::uint64_t s = 0; s < 5; ++s) {
    states.push_back(random_pure_haar(k23, s));
    states.push_back(random_mixed_ginibre(k33, 2, s));
  }
  for (const auto& rho : states) {
    check_valid(rho);
    check_valid(rho.marginal_a());
    check_valid(rho.marginal_b());
    CHECK(rho.marginal_a().dim() == rho.split().dim_a());
    CHECK(max_abs_diff(rho.marginal_a().matrix(),
                       oracle::trace_out_b(rho.matrix(), rho.split().dim_a(), rho.split().dim_b())) < 1e-14);
  }
}

TEST_CASE("subsystem swap") {
  const auto rho = random_mixed_ginibre(k23, 3, 12);
  const auto sw = swap_subsystems(rho);
  CHECK(sw.split() == DimSplit::bipartite(3, 2));
  CHECK(max_abs_diff(sw.marginal_a().matrix(), rho.marginal_b().matrix()) < 1e-14);
  CHECK(max_abs_diff(sw.marginal_b().matrix(), rho.marginal_a().matrix()) < 1e-14);
  CHECK(max_abs_diff(swap_subsystems(sw).matrix(), rho.matrix()) < 1e-15);
}
