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

#include "corrbound/state_library.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

namespace corrbound {

DensityMatrix DensityMatrix::from_matrix(const ComplexMatrix& m, const DimSplit& split, double negative_tol) {
  if (!m.is_square()) {
    throw InvalidInput("square", fmt::format("density matrix must be square, got {}x{}", m.rows(), m.cols()));
  }
  if (m.rows() != split.total()) {
    throw InvalidInput("dimension",
                       fmt::format("side {} does not match split {} (product {})", m.rows(), split.label(), split.total()));
  }
  const double asym = hermiticity_defect(m);
  if (asym > StateTolerances::kHermitian) {
    throw InvalidInput("hermitian", fmt::format("asymmetry {:.3e} exceeds {:.0e}", asym, StateTolerances::kHermitian));
  }
  const Complex tr = m.trace();
  if (std::abs(tr - 1.0) > StateTolerances::kTrace) {
    throw InvalidInput("trace", fmt::format("trace {:.12g}{:+.3e}i differs from 1", tr.real(), tr.imag()));
  }

  ComplexMatrix herm = hermitian_part(m);
  auto es = hermitian_eigensystem(herm);
  const double lowest = es.values.empty() ? 0.0 : es.values.front();
  if (lowest < -negative_tol) {
    throw InvalidInput("psd", fmt::format("eigenvalue {:.6g} below -{:.0e}", lowest, negative_tol));
  }
  if (lowest < 0.0) {
    for (auto& v : es.values) v = std::max(v, 0.0);
    double sum = 0.0;
    for (auto v : es.values) sum += v;
    for (auto& v : es.values) v /= sum;
    herm = hermitian_function(es, [](double x) { return Complex(x); });
  }
  return DensityMatrix(std::move(herm), split, std::move(es.values));
}

double DensityMatrix::purity() const {
  double s = 0.0;
  for (auto v : spectrum_) s += v * v;
  return s;
}

DensityMatrix DensityMatrix::reduce(std::span<const std::size_t> keep) const {
  return from_matrix(partial_trace(matrix_, split_, keep), split_.select(keep));
}

DensityMatrix DensityMatrix::marginal_a() const {
  if (!split_.is_bipartite()) throw InvalidInput("bipartite", "marginal_a needs a two-factor split");
  const std::array<std::size_t, 1> keep{0};
  return reduce(keep);
}

DensityMatrix DensityMatrix::marginal_b() const {
  if (!split_.is_bipartite()) throw InvalidInput("bipartite", "marginal_b needs a two-factor split");
  const std::array<std::size_t, 1> keep{1};
  return reduce(keep);
}

DensityMatrix pure_from_vector(std::span<const Complex> v, const DimSplit& split) {
  if (v.size() != split.total()) {
    throw InvalidInput("dimension", fmt::format("vector of length {} for split {}", v.size(), split.label()));
  }
  double norm2 = 0.0;
  for (const auto& z : v) norm2 += std::norm(z);
  if (!(norm2 > 0.0) || !std::isfinite(norm2)) throw InvalidInput("nonzero", "state vector is zero or not finite");
  ComplexMatrix m = ComplexMatrix::outer(v, v);
  m *= 1.0 / norm2;
  return DensityMatrix::from_matrix(m, split);
}

DensityMatrix random_pure_haar(const DimSplit& split, std::uint64_t seed) {
  CounterRng rng(seed, /*stream=*/0x4a11);
  std::vector<Complex> v(split.total());
  for (auto& z : v) z = rng.complex_normal();
  return pure_from_vector(v, split);
}

DensityMatrix random_mixed_ginibre(const DimSplit& split, std::size_t rank, std::uint64_t seed) {
  const std::size_t n = split.total();
  if (rank < 1 || rank > n) {
    throw InvalidInput("rank", fmt::format("rank {} outside [1, {}]", rank, n));
  }
  CounterRng rng(seed, /*stream=*/0x6191);
  ComplexMatrix g(n, rank);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < rank; ++j) g(i, j) = rng.complex_normal();
  ComplexMatrix rho = g * g.adjoint();
  rho *= 1.0 / rho.trace().real();
  return DensityMatrix::from_matrix(rho, split);
}

DensityMatrix swap_subsystems(const DensityMatrix& rho) {
  if (!rho.split().is_bipartite()) throw InvalidInput("bipartite", "swap needs a two-factor split");
  const std::array<std::size_t, 2> order{1, 0};
  return DensityMatrix::from_matrix(permute_factors(rho.matrix(), rho.split(), order),
                                    DimSplit::bipartite(rho.split().dim_b(), rho.split().dim_a()));
}

DensityMatrix product_state(const DensityMatrix& rho_a, const DensityMatrix& rho_b) {
  return DensityMatrix::from_matrix(tensor_product(rho_a.matrix(), rho_b.matrix()),
                                    DimSplit::bipartite(rho_a.dim(), rho_b.dim()));
}

DensityMatrix bell_phi_plus() {
  const double s = std::numbers::sqrt2 / 2.0;
  const std::array<Complex, 4> v{s, 0.0, 0.0, s};
  return pure_from_vector(v, DimSplit::bipartite(2, 2));
}

DensityMatrix werner(double z) {
  if (!(z >= 0.0 && z <= 1.0)) throw InvalidInput("range", fmt::format("werner weight {} outside [0, 1]", z));
  const double s = std::numbers::sqrt2 / 2.0;
  const std::array<Complex, 4> singlet{0.0, s, -s, 0.0};
  ComplexMatrix m = ComplexMatrix::outer(singlet, singlet) * Complex(z);
  for (std::size_t i = 0; i < 4; ++i) m(i, i) += (1.0 - z) / 4.0;
  return DensityMatrix::from_matrix(m, DimSplit::bipartite(2, 2));
}

DensityMatrix maximally_mixed(const DimSplit& split) {
  const std::size_t n = split.total();
  ComplexMatrix m = ComplexMatrix::identity(n) * Complex(1.0 / static_cast<double>(n));
  return DensityMatrix::from_matrix(m, split);
}

DensityMatrix classical_classical(std::span<const double> table, const DimSplit& split) {
  if (!split.is_bipartite() || table.size() != split.total()) {
    throw InvalidInput("dimension", fmt::format("joint table of {} entries for split {}", table.size(), split.label()));
  }
  double sum = 0.0;
  for (auto p : table) {
    if (!(p >= 0.0)) throw InvalidInput("probability", "joint table has a negative or NaN entry");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) throw InvalidInput("probability", fmt::format("joint table sums to {}", sum));
  return DensityMatrix::from_matrix(ComplexMatrix::diagonal(table), split);
}

DensityMatrix family(const std::string& name, double param) {
  const bool has = !std::isnan(param);
  if (name == "bell_phi_plus" || name == "bell") return bell_phi_plus();
  if (name == "werner") return werner(has ? param : 0.5);
  if (name == "maximally_mixed") return maximally_mixed(DimSplit::bipartite(2, 2));
  if (name == "product") {
    const double p = has ? param : 0.75;
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("range", fmt::format("product weight {} outside [0, 1]", p));
    const std::array<double, 2> diag{p, 1.0 - p};
    const auto q = DensityMatrix::from_matrix(ComplexMatrix::diagonal(diag), DimSplit::single(2));
    return product_state(q, q);
  }
  if (name == "classical_classical" || name == "classical") {
    const double p = has ? param : 0.5;
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("range", fmt::format("classical weight {} outside [0, 1]", p));
    const std::array<double, 4> table{p, 0.0, 0.0, 1.0 - p};
    return classical_classical(table, DimSplit::bipartite(2, 2));
  }
  throw InvalidInput("family", fmt::format("unknown state family '{}'", name));
}

ComplexMatrix random_unitary(std::size_t dim, CounterRng& rng) {
  std::vector<std::vector<Complex>> cols;
  while (cols.size() < dim) {
    std::vector<Complex> v(dim);
    for (auto& z : v) z = rng.complex_normal();
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : cols) {
        Complex proj{};
        for (std::size_t i = 0; i < dim; ++i) proj += std::conj(b[i]) * v[i];
        for (std::size_t i = 0; i < dim; ++i) v[i] -= proj * b[i];
      }
    }
    double norm = 0.0;
    for (const auto& z : v) norm += std::norm(z);
    norm = std::sqrt(norm);
    if (norm < 1e-6) continue;
    for (auto& z : v) z /= norm;
    cols.push_back(std::move(v));
  }
  ComplexMatrix u(dim, dim);
  for (std::size_t j = 0; j < dim; ++j)
    for (std::size_t i = 0; i < dim; ++i) u(i, j) = cols[j][i];
  return u;
}

}  // namespace corrbound
