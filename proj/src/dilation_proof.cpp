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

#include "corrbound/dilation_proof.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "corrbound/entropy.hpp"

namespace corrbound {

namespace {

constexpr double kIdentityTol = 1e-8;
constexpr double kBoundTol = 1e-9;
constexpr double kCompletionTol = 1e-9;

// Column-completes `iso` and places its columns at `slots` of the result; the
// complement fills the remaining columns in increasing index order.
ComplexMatrix complete_into_slots(const ComplexMatrix& iso, const std::vector<std::size_t>& slots) {
  const ComplexMatrix q = complete_to_unitary(iso, Orientation::kColumns, kCompletionTol);
  const std::size_t n = q.rows();
  std::vector<std::size_t> target(n, n);
  std::vector<bool> used(n, false);
  for (std::size_t j = 0; j < slots.size(); ++j) {
    target[j] = slots[j];
    used[slots[j]] = true;
  }
  std::size_t free = 0;
  for (std::size_t j = slots.size(); j < n; ++j) {
    while (used[free]) ++free;
    target[j] = free;
    used[free] = true;
  }
  ComplexMatrix u(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) u(i, target[j]) = q(i, j);
  return u;
}

// Unitary R on the ancilla with R|0> = omega.
ComplexMatrix ancilla_rotation(const std::vector<Complex>& omega) {
  return complete_to_unitary(ComplexMatrix::column_vector(omega), Orientation::kColumns, kCompletionTol);
}

std::vector<Complex> rank_one_vector(const ComplexMatrix& e) {
  std::size_t j = 0;
  for (std::size_t i = 1; i < e.rows(); ++i)
    if (e(i, i).real() > e(j, j).real()) j = i;
  std::vector<Complex> v(e.rows());
  const double pivot = e(j, j).real();
  if (pivot <= 0.0) return v;
  const double scale = 1.0 / std::sqrt(pivot);
  for (std::size_t i = 0; i < e.rows(); ++i) v[i] = e(i, j) * scale;
  return v;
}

ComplexMatrix embed_on_a(std::size_t dim_a, const ComplexMatrix& op) {
  return tensor_product(ComplexMatrix::identity(dim_a), op);
}

// rho'/p style states: widen the clipping window by the amplified round-off.
DensityMatrix normalized_block(const ComplexMatrix& block, double p, const DimSplit& split) {
  ComplexMatrix m = hermitian_part(block);
  m *= 1.0 / p;
  return DensityMatrix::from_matrix(m, split, StateTolerances::kNegativeEigenvalue + 1e-13 / p);
}

DensityMatrix as_state(const ComplexMatrix& m, std::vector<std::size_t> dims) {
  return DensityMatrix::from_matrix(hermitian_part(m), DimSplit(std::move(dims)));
}

}  // namespace

std::string to_string(NeumarkConstruction c) { return c == NeumarkConstruction::kCanonical ? "canonical" : "rank1"; }

NeumarkConstruction parse_construction(const std::string& name) {
  if (name == "canonical") return NeumarkConstruction::kCanonical;
  if (name == "rank1") return NeumarkConstruction::kRankOne;
  throw InvalidInput("construction", fmt::format("unknown Neumark construction '{}'", name));
}

// ---------------------------------------------------------------------------
// Neumark

double NeumarkExtension::compression_defect() const {
  // (1 (x) <w|) X (1 (x) |w>)
  const std::size_t n = ancilla_dim;
  double worst = 0.0;
  for (std::size_t k = 0; k < source.size(); ++k) {
    const ComplexMatrix& pi = projectors[k];
    ComplexMatrix c(dim_b, dim_b);
    for (std::size_t i = 0; i < dim_b; ++i)
      for (std::size_t j = 0; j < dim_b; ++j) {
        Complex s{};
        for (std::size_t a = 0; a < n; ++a)
          for (std::size_t b = 0; b < n; ++b) s += std::conj(omega[a]) * pi(i * n + a, j * n + b) * omega[b];
        c(i, j) = s;
      }
    worst = std::max(worst, max_abs_diff(c, source[k]));
  }
  return worst;
}

NeumarkExtension neumark_extend(const Povm& m, NeumarkConstruction construction,
                                const std::optional<std::vector<Complex>>& omega) {
  const std::size_t d = m.dim();
  std::vector<std::size_t> parent;
  Povm source = m;
  if (construction == NeumarkConstruction::kRankOne) {
    source = refine_to_rank_one(m, &parent);
  } else {
    for (std::size_t k = 0; k < m.size(); ++k) parent.push_back(k);
  }
  const std::size_t outcomes = source.size();
  const std::size_t anc = construction == NeumarkConstruction::kCanonical ? outcomes : outcomes / d;
  const std::size_t big = d * anc;

  std::vector<ComplexMatrix> projectors;
  projectors.reserve(outcomes);
  if (construction == NeumarkConstruction::kCanonical) {
    // W(|v> (x) |w>) = sum_k sqrt(E_k)|v> (x) |k>
    ComplexMatrix w_iso(big, d);
    for (std::size_t k = 0; k < outcomes; ++k) {
      const ComplexMatrix root = psd_sqrt(source[k]);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t v = 0; v < d; ++v) w_iso(i * anc + k, v) = root(i, v);
    }
    std::vector<std::size_t> slots(d);
    for (std::size_t v = 0; v < d; ++v) slots[v] = v * anc;
    const ComplexMatrix w = complete_into_slots(w_iso, slots);
    const ComplexMatrix w_dag = w.adjoint();
    for (std::size_t k = 0; k < outcomes; ++k) {
      ComplexMatrix ket_k(anc, anc);
      ket_k(k, k) = 1.0;
      projectors.push_back(hermitian_part(w_dag * embed_on_a(d, ket_k) * w));
    }
  } else {
    // d x m co-isometry with column k holding e_k, completed row-wise to F;
    // Pi_k = |f_k><f_k| with f_k column k of F, index i + d a <-> |i>|a>.
    ComplexMatrix coiso(d, outcomes);
    for (std::size_t k = 0; k < outcomes; ++k) {
      const auto e = rank_one_vector(source[k]);
      for (std::size_t i = 0; i < d; ++i) coiso(i, k) = e[i];
    }
    const ComplexMatrix f = complete_to_unitary(coiso, Orientation::kRows, kCompletionTol);
    for (std::size_t k = 0; k < outcomes; ++k) {
      std::vector<Complex> fk(big);
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t a = 0; a < anc; ++a) fk[i * anc + a] = f(i + d * a, k);
      projectors.push_back(ComplexMatrix::outer(fk, fk));
    }
  }

  std::vector<Complex> w(anc);
  w[0] = 1.0;
  if (omega) {
    if (omega->size() != anc) {
      throw InvalidInput("dimension", fmt::format("omega has length {}, ancilla dimension is {}", omega->size(), anc));
    }
    double norm = 0.0;
    for (const auto& z : *omega) norm += std::norm(z);
    if (std::abs(norm - 1.0) > 1e-10) throw InvalidInput("normalized", "omega must be a unit vector");
    const ComplexMatrix r = embed_on_a(d, ancilla_rotation(*omega));
    const ComplexMatrix r_dag = r.adjoint();
    for (auto& p : projectors) p = hermitian_part(r * p * r_dag);
    w = *omega;
  }

  return NeumarkExtension{
      .source = std::move(source),
      .parent = std::move(parent),
      .dim_b = d,
      .ancilla_dim = anc,
      .omega = std::move(w),
      .projectors = ProjectiveMeasurement::from_projectors(std::move(projectors)),
      .construction = construction,
  };
}

NeumarkResiduals verify_neumark_consistency(const DensityMatrix& rho, const NeumarkExtension& ext,
                                            const Povm* original) {
  const std::size_t da = rho.split().dim_a();
  if (rho.split().dim_b() != ext.dim_b) throw InvalidInput("dimension", "state and extension disagree on dim_b");
  const auto direct = condition_on_b(rho, ext.source);

  const ComplexMatrix rho_abb = tensor_product(rho.matrix(), ComplexMatrix::outer(ext.omega, ext.omega));
  const DimSplit split({da, ext.dim_b * ext.ancilla_dim});
  const std::array<std::size_t, 1> keep_a{0};

  NeumarkResiduals r;
  std::vector<double> dilated_p(ext.source.size());
  for (std::size_t k = 0; k < ext.source.size(); ++k) {
    const ComplexMatrix block = partial_trace(embed_on_a(da, ext.projectors[k]) * rho_abb, split, keep_a);
    const double p = hermitian_part(block).trace().real();
    dilated_p[k] = p;
    r.probability = std::max(r.probability, std::abs(p - direct.probabilities[k]));
    const auto it = std::find(direct.retained.begin(), direct.retained.end(), k);
    if (it == direct.retained.end()) continue;
    const ComplexMatrix cond = hermitian_part(block) * Complex(1.0 / p);
    r.conditional = std::max(r.conditional,
                             max_abs_diff(cond, direct.conditionals[static_cast<std::size_t>(it - direct.retained.begin())].matrix()));
  }
  if (original) {
    const auto coarse = condition_on_b(rho, *original);
    std::vector<double> summed(original->size(), 0.0);
    for (std::size_t k = 0; k < ext.parent.size(); ++k)
      if (ext.parent[k] < summed.size()) summed[ext.parent[k]] += dilated_p[k];
    for (std::size_t k = 0; k < summed.size(); ++k)
      r.coarse_probability = std::max(r.coarse_probability, std::abs(summed[k] - coarse.probabilities[k]));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Stinespring

std::vector<Complex> StinespringDilation::c_basis(std::size_t k) const {
  std::vector<Complex> v(c_dim);
  v.at(k) = 1.0;
  return v;
}

StinespringDilation stinespring_dilate(const ProjectiveMeasurement& m) {
  const std::size_t dim = m.dim();
  const std::size_t outcomes = m.size();
  ComplexMatrix v(dim * outcomes, dim);
  for (std::size_t k = 0; k < outcomes; ++k)
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c) v(r * outcomes + k, c) = m[k](r, c);
  std::vector<std::size_t> slots(dim);
  for (std::size_t c = 0; c < dim; ++c) slots[c] = c * outcomes;
  ComplexMatrix u = complete_into_slots(v, slots);
  return StinespringDilation{
      .measurement = m,
      .c_dim = outcomes,
      .isometry_v = std::move(v),
      .unitary_u = std::move(u),
  };
}

// ---------------------------------------------------------------------------
// Proof trace

ProofTrace build_proof_trace(const DensityMatrix& rho, const Povm& m, const ProofOptions& options) {
  if (!rho.split().is_bipartite()) throw InvalidInput("bipartite", "proof trace needs a two-factor state");
  const std::size_t da = rho.split().dim_a();
  const std::size_t db = rho.split().dim_b();
  if (m.dim() != db) {
    throw InvalidInput("dimension", fmt::format("POVM acts on dimension {}, subsystem B has {}", m.dim(), db));
  }

  // size check before any dilation work
  std::size_t outcomes = m.size();
  if (options.construction == NeumarkConstruction::kRankOne) outcomes = refine_to_rank_one(m).size();
  const std::size_t anc = options.construction == NeumarkConstruction::kCanonical ? outcomes : outcomes / db;
  const std::size_t total = da * db * anc * outcomes;
  if (total > options.dimension_cap) {
    throw InvalidInput("dimension_cap",
                       fmt::format("dilated space has dimension {} = {} (A) x {} (B) x {} (ancilla) x {} (register), "
                                   "above the cap {}; use fewer POVM outcomes, the canonical construction, "
                                   "or raise the cap",
                                   total, da, db, anc, outcomes, options.dimension_cap));
  }

  auto neumark = neumark_extend(m, options.construction, options.omega);
  auto stinespring = stinespring_dilate(neumark.projectors);
  auto ensemble = condition_on_b(rho, neumark.source);
  const std::size_t big = db * anc;  // dim of BB~
  const std::size_t nc = outcomes;

  const DensityMatrix rho_a = rho.marginal_a();
  const DensityMatrix rho_b = rho.marginal_b();

  const ComplexMatrix omega_proj = ComplexMatrix::outer(neumark.omega, neumark.omega);
  const ComplexMatrix abb = tensor_product(rho.matrix(), omega_proj);
  const std::vector<std::size_t> abb_dims{da, db, anc};

  std::vector<ComplexMatrix> lifted;  // 1_A (x) Pi_k
  lifted.reserve(nc);
  for (std::size_t k = 0; k < nc; ++k) lifted.push_back(embed_on_a(da, neumark.projectors[k]));

  ComplexMatrix abb_prime(da * big, da * big);
  for (std::size_t k = 0; k < nc; ++k) abb_prime += lifted[k] * abb * lifted[k];

  // rho'_ABB~C by unitary conjugation ...
  ComplexMatrix c0(nc, nc);
  c0(0, 0) = 1.0;
  const ComplexMatrix lifted_u = embed_on_a(da, stinespring.unitary_u);
  const ComplexMatrix abbc_prime = lifted_u * tensor_product(abb, c0) * lifted_u.adjoint();
  // ... and by the double sum over (k, j)
  ComplexMatrix abbc_double(da * big * nc, da * big * nc);
  for (std::size_t k = 0; k < nc; ++k) {
    const ComplexMatrix left = lifted[k] * abb;
    for (std::size_t j = 0; j < nc; ++j) {
      const ComplexMatrix blk = left * lifted[j];
      for (std::size_t r = 0; r < da * big; ++r)
        for (std::size_t s = 0; s < da * big; ++s) abbc_double(r * nc + k, s * nc + j) = blk(r, s);
    }
  }

  const DimSplit abbc_split({da, db, anc, nc});
  const std::array<std::size_t, 2> keep_ac{0, 3};
  const std::array<std::size_t, 1> keep_a{0};
  const std::array<std::size_t, 3> keep_bbc{1, 2, 3};
  const std::array<std::size_t, 2> keep_bb{1, 2};
  const std::array<std::size_t, 2> keep_ab{0, 1};
  const DimSplit abb_split(abb_dims);

  auto rho_abb = as_state(abb, abb_dims);
  auto rho_bb = as_state(partial_trace(abb, abb_split, std::array<std::size_t, 2>{1, 2}), {db, anc});
  auto rho_abb_prime = as_state(abb_prime, abb_dims);
  auto rho_ab_prime = as_state(partial_trace(abb_prime, abb_split, keep_ab), {da, db});
  auto rho_abbc_prime = as_state(abbc_prime, {da, db, anc, nc});
  auto rho_ac_prime = as_state(partial_trace(abbc_prime, abbc_split, keep_ac), {da, nc});
  auto rho_a_prime = as_state(partial_trace(abbc_prime, abbc_split, keep_a), {da});
  auto rho_bbc_prime = as_state(partial_trace(abbc_prime, abbc_split, keep_bbc), {db, anc, nc});
  auto rho_bb_prime = as_state(partial_trace(abbc_prime, abbc_split, keep_bb), {db, anc});

  ProofTrace::Residuals res;
  res.neumark_compression = neumark.compression_defect();
  {
    const auto nr = verify_neumark_consistency(rho, neumark);
    res.neumark_probability = nr.probability;
    res.neumark_conditional = nr.conditional;
  }
  res.double_sum_vs_unitary = max_abs_diff(abbc_prime, abbc_double);

  ComplexMatrix ac_block(da * nc, da * nc);
  for (std::size_t i = 0; i < ensemble.retained.size(); ++i) {
    const std::size_t k = ensemble.retained[i];
    ComplexMatrix ck(nc, nc);
    ck(k, k) = 1.0;
    ac_block += tensor_product(ensemble.conditionals[i].matrix() * Complex(ensemble.probabilities[k]), ck);
  }
  res.ac_block_form = max_abs_diff(rho_ac_prime.matrix(), ac_block);
  res.a_prime_vs_a = max_abs_diff(rho_a_prime.matrix(), rho_a.matrix());
  res.ensemble_average_vs_a = max_abs_diff(ensemble.average_state(), rho_a.matrix());

  {
    std::vector<double> small(rho_bb.spectrum().begin(), rho_bb.spectrum().end());
    std::vector<double> large(rho_bbc_prime.spectrum().begin(), rho_bbc_prime.spectrum().end());
    small.insert(small.begin(), large.size() - small.size(), 0.0);
    double worst = 0.0;
    for (std::size_t i = 0; i < large.size(); ++i) worst = std::max(worst, std::abs(large[i] - small[i]));
    res.bbc_spectrum = worst;
  }

  ComplexMatrix weighted(big, big);
  double bb_block_entropy = 0.0;
  for (std::size_t k = 0; k < nc; ++k) {
    const double p = ensemble.probabilities[k];
    weighted += neumark.projectors[k] * Complex(p);
    if (p < MeasurementTolerances::kNegligibleOutcome) continue;
    const ComplexMatrix blk = neumark.projectors[k] * rho_bb.matrix() * neumark.projectors[k];
    bb_block_entropy += p * von_neumann_entropy(normalized_block(blk, p, DimSplit::single(big)));
  }
  res.rank_one_identity = max_abs_diff(rho_bb_prime.matrix(), weighted);

  {
    ComplexMatrix literal(da * db, da * db);
    for (std::size_t k = 0; k < neumark.source.size(); ++k) literal += embed_on_a(da, neumark.source[k]) * rho.matrix();
    res.literal_vs_luders = max_abs_diff(literal, rho_ab_prime.matrix());
  }

  const double s_a = von_neumann_entropy(rho_a);
  const double s_b = von_neumann_entropy(rho_b);
  const double s_bb = von_neumann_entropy(rho_bb);
  const double s_ac_prime = von_neumann_entropy(rho_ac_prime);
  const double s_a_prime = von_neumann_entropy(rho_a_prime);
  const double s_bbc_prime = von_neumann_entropy(rho_bbc_prime);
  const double s_bb_prime = von_neumann_entropy(rho_bb_prime);
  const double h_p = shannon_entropy(ensemble.probabilities);
  const double avg = ensemble.average_conditional_entropy();
  const double objective = s_a - avg;

  return ProofTrace{
      .rho_ab = rho,
      .povm = m,
      .neumark = std::move(neumark),
      .stinespring = std::move(stinespring),
      .ensemble = std::move(ensemble),
      .dim_a = da,
      .dim_b = db,
      .ancilla_dim = anc,
      .c_dim = nc,
      .rho_a = rho_a,
      .rho_b = rho_b,
      .rho_abb = std::move(rho_abb),
      .rho_bb = std::move(rho_bb),
      .rho_abb_prime = std::move(rho_abb_prime),
      .rho_ab_prime = std::move(rho_ab_prime),
      .rho_abbc_prime = std::move(rho_abbc_prime),
      .rho_ac_prime = std::move(rho_ac_prime),
      .rho_a_prime = std::move(rho_a_prime),
      .rho_bbc_prime = std::move(rho_bbc_prime),
      .rho_bb_prime = std::move(rho_bb_prime),
      .s_a = s_a,
      .s_b = s_b,
      .s_bb = s_bb,
      .s_ac_prime = s_ac_prime,
      .s_a_prime = s_a_prime,
      .s_bbc_prime = s_bbc_prime,
      .s_bb_prime = s_bb_prime,
      .shannon_p = h_p,
      .average_conditional_entropy = avg,
      .bb_block_entropy = bb_block_entropy,
      .residuals = res,
      .ssa_slack = s_ac_prime + s_bbc_prime - s_a_prime - s_bb_prime,
      .final_margin_sb = s_b - objective,
      .final_margin_sa = s_a - objective,
  };
}

// ---------------------------------------------------------------------------
// Verdict

const ProofCheck& ProofVerdict::check(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return c;
  throw std::out_of_range("no proof check named " + name);
}

ProofVerdict verify_proof(const ProofTrace& t) {
  ProofVerdict v;
  auto equality = [&](std::string name, std::string description, double residual, double tol, bool required) {
    v.checks.push_back({std::move(name), std::move(description), residual, tol, false, required, residual <= tol});
  };
  auto bound = [&](std::string name, std::string description, double slack, double tol) {
    v.checks.push_back({std::move(name), std::move(description), slack, tol, true, true, slack >= -tol});
  };
  const bool rank_one = t.neumark.construction == NeumarkConstruction::kRankOne;

  equality("i_ac_entropy", "S(rho'_AC) = H(p) + sum_k p_k S(rho_A|k)",
           std::abs(t.s_ac_prime - (t.shannon_p + t.average_conditional_entropy)), kIdentityTol, true);
  equality("ii_a_entropy", "S(rho'_A) = S(rho_A)", std::abs(t.s_a_prime - t.s_a), kIdentityTol, true);
  equality("iii_bbc_entropy", "S(rho'_BB~C) = S(rho_BB~) = S(rho_B)",
           std::max(std::abs(t.s_bbc_prime - t.s_bb), std::abs(t.s_bb - t.s_b)), kIdentityTol, true);
  equality("iv_rank_one_identity", "rho'_BB~ = sum_k p_k Pi_k", t.residuals.rank_one_identity, kIdentityTol, rank_one);
  equality("iv_bb_decomposition", "S(rho'_BB~) = H(p) + sum_k p_k S(Pi_k rho_BB~ Pi_k / p_k)",
           std::abs(t.s_bb_prime - (t.shannon_p + t.bb_block_entropy)), kIdentityTol, true);
  bound("v_ssa", "S(rho'_AC) + S(rho'_BB~C) - S(rho'_A) - S(rho'_BB~) >= 0", t.ssa_slack, kBoundTol);
  bound("vi_margin_sb", "S(rho_B) - [S(rho_A) - sum_k p_k S(rho_A|k)] >= 0", t.final_margin_sb, kBoundTol);
  bound("vi_margin_sa", "S(rho_A) - [S(rho_A) - sum_k p_k S(rho_A|k)] >= 0", t.final_margin_sa, kBoundTol);

  equality("neumark_compression", "(1 (x) <w|) Pi_k (1 (x) |w>) = E_k", t.residuals.neumark_compression, 1e-10, true);
  equality("neumark_probabilities", "p_k from E_k and from Pi_k agree", t.residuals.neumark_probability, 1e-10, true);
  equality("neumark_conditionals", "rho_A|k from E_k and from Pi_k agree", t.residuals.neumark_conditional, 1e-10,
           true);
  equality("stinespring_double_sum", "U-conjugation and double-sum forms of rho'_ABB~C agree",
           t.residuals.double_sum_vs_unitary, 1e-10, true);
  equality("ac_block_form", "rho'_AC = sum_k p_k rho_A|k (x) |c_k><c_k|", t.residuals.ac_block_form, 1e-10, true);
  equality("a_prime_equals_a", "rho'_A = sum_k p_k rho_A|k = rho_A",
           std::max(t.residuals.a_prime_vs_a, t.residuals.ensemble_average_vs_a), 1e-10, true);
  equality("bbc_spectrum", "rho'_BB~C and rho_BB~ share their nonzero spectrum", t.residuals.bbc_spectrum, 1e-9, true);
  equality("literal_vs_luders", "sum_k (1 (x) E_k) rho_AB vs Tr_B~ rho'_ABB~ (informational)",
           t.residuals.literal_vs_luders, kIdentityTol, false);

  v.all_required_passed =
      std::all_of(v.checks.begin(), v.checks.end(), [](const ProofCheck& c) { return !c.required || c.passed; });
  return v;
}

}  // namespace corrbound
