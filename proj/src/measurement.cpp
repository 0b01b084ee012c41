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

#include "corrbound/measurement.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "corrbound/entropy.hpp"

namespace corrbound {

namespace {

std::size_t common_dim(const std::vector<ComplexMatrix>& ops, const char* what) {
  if (ops.empty()) throw InvalidInput("outcomes", fmt::format("{} needs at least one element", what));
  const std::size_t d = ops.front().rows();
  for (const auto& e : ops) {
    if (!e.is_square() || e.rows() != d) {
      throw InvalidInput("dimension", fmt::format("{} elements must all be {}x{}", what, d, d));
    }
  }
  return d;
}

ComplexMatrix sum_of(const std::vector<ComplexMatrix>& ops, std::size_t d) {
  ComplexMatrix s(d, d);
  for (const auto& e : ops) s += e;
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// Povm

Povm::Povm(std::vector<ComplexMatrix> elements) : elements_(std::move(elements)) {
  dim_ = common_dim(elements_, "POVM");
}

Povm Povm::from_elements(std::vector<ComplexMatrix> elements) {
  Povm m(std::move(elements));
  for (std::size_t k = 0; k < m.size(); ++k) {
    const double asym = hermiticity_defect(m.elements_[k]);
    if (asym > MeasurementTolerances::kHermitian) {
      throw InvalidInput("hermitian", fmt::format("POVM element {} asymmetry {:.3e}", k, asym));
    }
    m.elements_[k] = hermitian_part(m.elements_[k]);
    const auto es = hermitian_eigensystem(m.elements_[k]);
    if (es.values.front() < -MeasurementTolerances::kNegativeEigenvalue) {
      throw InvalidInput("psd", fmt::format("POVM element {} has eigenvalue {:.6g}", k, es.values.front()));
    }
  }
  const double defect = m.completeness_defect();
  if (defect > MeasurementTolerances::kCompleteness) {
    throw InvalidInput("completeness", fmt::format("sum of POVM elements deviates from identity by {:.3e}", defect));
  }
  return m;
}

Povm Povm::assume_valid(std::vector<ComplexMatrix> elements) { return Povm(std::move(elements)); }

Povm Povm::computational(std::size_t dim) {
  std::vector<ComplexMatrix> el;
  for (std::size_t i = 0; i < dim; ++i) {
    ComplexMatrix e(dim, dim);
    e(i, i) = 1.0;
    el.push_back(std::move(e));
  }
  return Povm(std::move(el));
}

double Povm::completeness_defect() const {
  return max_abs_diff(sum_of(elements_, dim_), ComplexMatrix::identity(dim_));
}

// ---------------------------------------------------------------------------
// ProjectiveMeasurement

ProjectiveMeasurement::ProjectiveMeasurement(std::vector<ComplexMatrix> projectors)
    : projectors_(std::move(projectors)) {
  dim_ = common_dim(projectors_, "projective measurement");
}

ProjectiveMeasurement ProjectiveMeasurement::from_projectors(std::vector<ComplexMatrix> projectors) {
  ProjectiveMeasurement m(std::move(projectors));
  for (std::size_t k = 0; k < m.size(); ++k) {
    const double asym = hermiticity_defect(m.projectors_[k]);
    if (asym > MeasurementTolerances::kHermitian) {
      throw InvalidInput("hermitian", fmt::format("projector {} asymmetry {:.3e}", k, asym));
    }
  }
  const double orth = m.orthogonality_defect();
  if (orth > MeasurementTolerances::kOrthogonality) {
    throw InvalidInput("orthogonality", fmt::format("P_k P_j - delta_kj P_k reaches {:.3e}", orth));
  }
  const double comp = m.completeness_defect();
  if (comp > MeasurementTolerances::kCompleteness) {
    throw InvalidInput("completeness", fmt::format("sum of projectors deviates from identity by {:.3e}", comp));
  }
  return m;
}

double ProjectiveMeasurement::orthogonality_defect() const {
  double worst = 0.0;
  for (std::size_t k = 0; k < size(); ++k) {
    for (std::size_t j = 0; j < size(); ++j) {
      const ComplexMatrix prod = projectors_[k] * projectors_[j];
      const double d = (k == j) ? max_abs_diff(prod, projectors_[k]) : max_abs(prod);
      worst = std::max(worst, d);
    }
  }
  return worst;
}

double ProjectiveMeasurement::completeness_defect() const {
  return max_abs_diff(sum_of(projectors_, dim_), ComplexMatrix::identity(dim_));
}

// ---------------------------------------------------------------------------
// ConditionalEnsemble

double ConditionalEnsemble::average_conditional_entropy() const {
  double s = 0.0;
  for (std::size_t i = 0; i < retained.size(); ++i) s += probabilities[retained[i]] * von_neumann_entropy(conditionals[i]);
  return s;
}

ComplexMatrix ConditionalEnsemble::average_state() const {
  if (conditionals.empty()) throw InvalidInput("outcomes", "ensemble has no retained outcome");
  const std::size_t d = conditionals.front().dim();
  ComplexMatrix s(d, d);
  for (std::size_t i = 0; i < retained.size(); ++i) s += conditionals[i].matrix() * Complex(probabilities[retained[i]]);
  return s;
}

// ---------------------------------------------------------------------------
// Measurements on B

ProjectiveMeasurement projective_from_unitary(const ComplexMatrix& u) {
  const double defect = unitarity_defect(u);
  if (defect > MeasurementTolerances::kUnitary) {
    throw InvalidInput("unitary", fmt::format("basis matrix unitarity defect {:.3e}", defect));
  }
  std::vector<ComplexMatrix> proj;
  proj.reserve(u.cols());
  for (std::size_t i = 0; i < u.cols(); ++i) {
    const auto col = u.column(i);
    proj.push_back(ComplexMatrix::outer(col, col));
  }
  return ProjectiveMeasurement::from_projectors(std::move(proj));
}

ProjectiveMeasurement qubit_projective(double theta, double phi) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  const Complex e = std::polar(1.0, phi);
  ComplexMatrix u(2, 2);
  u(0, 0) = c;
  u(1, 0) = e * s;
  u(0, 1) = -std::conj(e) * s;
  u(1, 1) = c;
  // columns: |n>, and e^{-i phi}-phased |n_perp>
  std::vector<ComplexMatrix> proj;
  for (std::size_t i = 0; i < 2; ++i) {
    const auto col = u.column(i);
    proj.push_back(ComplexMatrix::outer(col, col));
  }
  return ProjectiveMeasurement::from_projectors(std::move(proj));
}

ConditionalEnsemble condition_on_b(const DensityMatrix& rho, const Povm& m) {
  const auto& split = rho.split();
  if (!split.is_bipartite()) throw InvalidInput("bipartite", "conditioning needs a two-factor state");
  const std::size_t da = split.dim_a();
  const std::size_t db = split.dim_b();
  if (m.dim() != db) {
    throw InvalidInput("dimension", fmt::format("measurement on dimension {} for subsystem B of dimension {}", m.dim(), db));
  }
  const ComplexMatrix& r = rho.matrix();

  ConditionalEnsemble out;
  out.probabilities.reserve(m.size());
  for (std::size_t k = 0; k < m.size(); ++k) {
    const ComplexMatrix& e = m[k];
    // M_{a a'} = sum_{b b'} E_{b b'} rho_{(a b'), (a' b)}
    ComplexMatrix cond(da, da);
    for (std::size_t a = 0; a < da; ++a) {
      for (std::size_t ap = 0; ap < da; ++ap) {
        Complex s{};
        for (std::size_t b = 0; b < db; ++b)
          for (std::size_t bp = 0; bp < db; ++bp) s += e(b, bp) * r(a * db + bp, ap * db + b);
        cond(a, ap) = s;
      }
    }
    cond = hermitian_part(cond);
    const double p = std::max(0.0, cond.trace().real());
    out.probabilities.push_back(p);
    if (p < MeasurementTolerances::kNegligibleOutcome) {
      out.dropped.push_back(k);
      continue;
    }
    cond *= 1.0 / p;
    out.retained.push_back(k);
    out.conditionals.push_back(DensityMatrix::from_matrix(cond, DimSplit::single(da),
                                                          StateTolerances::kNegativeEigenvalue + 1e-13 / p));
  }
  return out;
}

double fixed_measurement_classical_info(const DensityMatrix& rho, const Povm& m) {
  const double s_a = von_neumann_entropy(rho.marginal_a());
  return s_a - condition_on_b(rho, m).average_conditional_entropy();
}

// ---------------------------------------------------------------------------
// Constructions

Povm trine_povm() {
  std::vector<ComplexMatrix> el;
  for (int j = 0; j < 3; ++j) {
    const double t = 2.0 * std::numbers::pi * j / 3.0;
    const std::vector<Complex> psi{std::cos(t), std::sin(t)};
    el.push_back(ComplexMatrix::outer(psi, psi) * Complex(2.0 / 3.0));
  }
  return Povm::from_elements(std::move(el));
}

Povm povm_from_vectors(std::span<const std::vector<Complex>> vectors, double min_eigenvalue) {
  if (vectors.empty()) throw InvalidInput("outcomes", "POVM chart needs at least one vector");
  const std::size_t d = vectors.front().size();
  ComplexMatrix t(d, d);
  std::vector<ComplexMatrix> rank_one;
  rank_one.reserve(vectors.size());
  for (const auto& v : vectors) {
    if (v.size() != d) throw InvalidInput("dimension", "POVM chart vectors differ in length");
    rank_one.push_back(ComplexMatrix::outer(v, v));
    t += rank_one.back();
  }
  const auto es = hermitian_eigensystem(t);
  if (es.values.front() < min_eigenvalue) {
    throw InvalidInput("chart", fmt::format("frame operator eigenvalue {:.3e} below {:.0e}", es.values.front(),
                                            min_eigenvalue));
  }
  const ComplexMatrix t_inv_sqrt = hermitian_function(es, [](double x) { return Complex(1.0 / std::sqrt(x)); });
  std::vector<ComplexMatrix> el;
  el.reserve(vectors.size());
  for (const auto& v : vectors) {
    const auto w = t_inv_sqrt * std::span<const Complex>(v);
    el.push_back(ComplexMatrix::outer(w, w));
  }
  return Povm::assume_valid(std::move(el));
}

Povm refine_to_rank_one(const Povm& m, std::vector<std::size_t>* parent) {
  std::vector<ComplexMatrix> pieces;
  std::vector<std::size_t> origin;
  for (std::size_t k = 0; k < m.size(); ++k) {
    const auto es = hermitian_eigensystem(m[k]);
    for (std::size_t i = es.values.size(); i-- > 0;) {
      const double lambda = es.values[i];
      if (lambda < 1e-12) continue;
      auto u = es.vectors.column(i);
      pieces.push_back(ComplexMatrix::outer(u, u) * Complex(lambda));
      origin.push_back(k);
    }
  }
  while (pieces.size() % m.dim() != 0) {
    pieces.emplace_back(m.dim(), m.dim());
    origin.push_back(std::numeric_limits<std::size_t>::max());
  }
  if (parent) *parent = std::move(origin);
  return Povm::assume_valid(std::move(pieces));
}

Povm random_two_outcome_povm(std::size_t dim, CounterRng& rng) {
  const ComplexMatrix q = random_unitary(dim, rng);
  std::vector<double> diag(dim);
  for (auto& x : diag) x = rng.uniform();
  const ComplexMatrix e = q * ComplexMatrix::diagonal(diag) * q.adjoint();
  ComplexMatrix f = ComplexMatrix::identity(dim) - e;
  return Povm::from_elements({hermitian_part(e), hermitian_part(f)});
}

Povm random_rank_one_povm(std::size_t dim, std::size_t outcomes, CounterRng& rng) {
  for (;;) {
    std::vector<std::vector<Complex>> vecs(outcomes, std::vector<Complex>(dim));
    for (auto& v : vecs)
      for (auto& z : v) z = rng.complex_normal();
    try {
      return povm_from_vectors(vecs);
    } catch (const InvalidInput&) {
      // degenerate frame, draw again
    }
  }
}

ProjectiveMeasurement random_projective(std::size_t dim, CounterRng& rng) {
  return projective_from_unitary(random_unitary(dim, rng));
}

}  // namespace corrbound
