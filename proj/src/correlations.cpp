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

#include "corrbound/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "corrbound/entropy.hpp"
#include "corrbound/parallel.hpp"

namespace corrbound {

namespace {

constexpr double kTieTolerance = 1e-12;
constexpr std::uint64_t kOptimizerStream = 0x0c1a551ca1ULL;

// Hermitian matrix from d^2 reals: the diagonal first, then (re, im) of each
// upper-triangle entry in row order.
ComplexMatrix hermitian_from_parameters(std::span<const double> x, std::size_t d) {
  ComplexMatrix h(d, d);
  std::size_t k = 0;
  for (std::size_t i = 0; i < d; ++i) h(i, i) = x[k++];
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      const Complex z(x[k], x[k + 1]);
      k += 2;
      h(i, j) = z;
      h(j, i) = std::conj(z);
    }
  }
  return h;
}

Povm basis_measurement(const ComplexMatrix& u) {
  std::vector<ComplexMatrix> el;
  el.reserve(u.cols());
  for (std::size_t i = 0; i < u.cols(); ++i) {
    const auto col = u.column(i);
    el.push_back(ComplexMatrix::outer(col, col));
  }
  return Povm::assume_valid(std::move(el));
}

enum class Chart { kUnitaryExp, kBloch, kPovmVectors };

const char* chart_name(Chart c) {
  switch (c) {
    case Chart::kUnitaryExp:
      return "unitary_exp";
    case Chart::kBloch:
      return "bloch";
    case Chart::kPovmVectors:
      return "povm_vectors";
  }
  return "?";
}

Povm measurement_from_chart(Chart chart, std::span<const double> x, std::size_t db) {
  switch (chart) {
    case Chart::kUnitaryExp:
      return basis_measurement(unitary_exp(hermitian_from_parameters(x, db)));
    case Chart::kBloch:
      return qubit_projective(x[0], x[1]).as_povm();
    case Chart::kPovmVectors: {
      const std::size_t n_out = x.size() / (2 * db);
      std::vector<std::vector<Complex>> vecs(n_out, std::vector<Complex>(db));
      for (std::size_t k = 0; k < n_out; ++k)
        for (std::size_t i = 0; i < db; ++i) vecs[k][i] = Complex(x[2 * (k * db + i)], x[2 * (k * db + i) + 1]);
      return povm_from_vectors(vecs);
    }
  }
  throw std::logic_error("unknown chart");
}

struct Candidate {
  Chart chart = Chart::kUnitaryExp;
  std::vector<double> x;
  double start_entropy = 0.0;
  double entropy = 0.0;
  std::size_t evaluations = 0;
};

std::optional<std::pair<double, double>> qubit_angles(const std::vector<ComplexMatrix>& elements) {
  if (elements.size() != 2 || elements.front().rows() != 2) return std::nullopt;
  // first-basis-vector convention: the projector with |<0|n>|^2 >= 1/2
  const ComplexMatrix& p = elements[0](0, 0).real() >= 0.5 ? elements[0] : elements[1];
  const double c2 = std::clamp(p(0, 0).real(), 0.0, 1.0);
  const double theta = 2.0 * std::acos(std::sqrt(c2));
  double phi = std::abs(p(1, 0)) > 1e-14 ? std::arg(p(1, 0)) : 0.0;
  if (phi < 0.0) phi += 2.0 * std::numbers::pi;
  return std::make_pair(theta, phi);
}

}  // namespace

std::string to_string(MeasurementClass c) { return c == MeasurementClass::kProjective ? "projective" : "povm"; }

MeasurementClass parse_measurement_class(const std::string& name) {
  if (name == "projective") return MeasurementClass::kProjective;
  if (name == "povm") return MeasurementClass::kPovm;
  throw InvalidInput("measurement_class", fmt::format("unknown measurement class '{}'", name));
}

double mutual_information(const DensityMatrix& rho) {
  return von_neumann_entropy(rho.marginal_a()) + von_neumann_entropy(rho.marginal_b()) - von_neumann_entropy(rho);
}

GridOptimum qubit_grid_oracle(const DensityMatrix& rho, std::size_t n_theta, std::size_t n_phi) {
  if (!rho.split().is_bipartite() || rho.split().dim_b() != 2) {
    throw InvalidInput("dimension", "the qubit grid oracle needs dim_b == 2");
  }
  if (n_theta < 2 || n_phi < 1) throw InvalidInput("grid", "grid needs n_theta >= 2 and n_phi >= 1");
  const double s_a = von_neumann_entropy(rho.marginal_a());
  GridOptimum best;
  double best_entropy = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n_theta; ++i) {
    const double theta = std::numbers::pi * static_cast<double>(i) / static_cast<double>(n_theta - 1);
    for (std::size_t j = 0; j < n_phi; ++j) {
      const double phi = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n_phi);
      const double h = condition_on_b(rho, qubit_projective(theta, phi).as_povm()).average_conditional_entropy();
      if (h < best_entropy) {
        best_entropy = h;
        best = {s_a - h, theta, phi};
      }
    }
  }
  return best;
}

ClassicalOptimum optimize_classical_correlations(const DensityMatrix& rho, const OptimizerOptions& options) {
  if (!rho.split().is_bipartite()) throw InvalidInput("bipartite", "J(A:B) needs a two-factor state");
  if (options.restarts < 1) throw InvalidInput("restarts", "at least one restart is required");
  const std::size_t db = rho.split().dim_b();
  const double s_a = von_neumann_entropy(rho.marginal_a());
  const bool projective = options.measurement_class == MeasurementClass::kProjective;
  const std::size_t n_out = options.povm_outcomes ? options.povm_outcomes : db * db;
  const bool grid_candidate = projective && db == 2 && options.qubit_grid_refine;
  const std::size_t n_candidates = options.restarts + (grid_candidate ? 1 : 0);

  auto run_candidate = [&](std::size_t index) {
    Candidate c;
    std::vector<double> start;
    if (index < options.restarts) {
      CounterRng rng = CounterRng(options.seed, kOptimizerStream).substream(index);
      if (projective) {
        c.chart = Chart::kUnitaryExp;
        start.resize(db * db);
        for (auto& v : start) v = rng.uniform(-std::numbers::pi, std::numbers::pi);
      } else {
        c.chart = Chart::kPovmVectors;
        start.resize(2 * db * n_out);
        for (;;) {
          for (auto& v : start) v = rng.normal();
          try {
            measurement_from_chart(c.chart, start, db);
            break;
          } catch (const InvalidInput&) {
            // degenerate frame operator: redraw
          }
        }
      }
    } else {
      c.chart = Chart::kBloch;
      const auto coarse = qubit_grid_oracle(rho, options.refine_grid_theta, options.refine_grid_phi);
      start = {coarse.theta, coarse.phi};
    }

    const Chart chart = c.chart;
    const Objective objective = [&](std::span<const double> x) {
      try {
        return condition_on_b(rho, measurement_from_chart(chart, x, db)).average_conditional_entropy();
      } catch (const InvalidInput& e) {
        if (e.invariant() == "chart") return std::numeric_limits<double>::infinity();
        throw;
      }
    };
    const auto res = minimize_simplex(objective, std::move(start), options.search);
    c.x = res.x;
    c.entropy = res.value;
    c.start_entropy = res.start_value;
    c.evaluations = res.evaluations;
    return c;
  };

  const auto candidates = parallel_map(n_candidates, options.workers, run_candidate);

  std::size_t best = 0;
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    if (s_a - candidates[i].entropy > s_a - candidates[best].entropy + kTieTolerance) best = i;
  }

  ClassicalOptimum out;
  out.classical_j = std::max(0.0, s_a - candidates[best].entropy);
  for (const auto& c : candidates) {
    out.start_values.push_back(s_a - c.start_entropy);
    out.candidate_values.push_back(s_a - c.entropy);
    out.evaluations += c.evaluations;
  }
  const Candidate& win = candidates[best];
  out.best.measurement_class = options.measurement_class;
  out.best.chart = chart_name(win.chart);
  out.best.parameters = win.x;
  out.best.candidate = best;
  out.best.elements = measurement_from_chart(win.chart, win.x, db).elements();
  if (projective) out.best.bloch_angles = qubit_angles(out.best.elements);
  return out;
}

CorrelationReport quantum_discord(const DensityMatrix& rho, const OptimizerOptions& options) {
  CorrelationReport r;
  r.dims = rho.split().label();
  r.s_a = von_neumann_entropy(rho.marginal_a());
  r.s_b = von_neumann_entropy(rho.marginal_b());
  r.s_ab = von_neumann_entropy(rho);
  r.mutual_information = r.s_a + r.s_b - r.s_ab;
  const auto opt = optimize_classical_correlations(rho, options);
  r.classical_j = opt.classical_j;
  r.discord = r.mutual_information - r.classical_j;
  r.bound_margin = std::min(r.s_a, r.s_b) - r.classical_j;
  r.discord_sb_margin = r.s_b - r.discord;
  r.discord_minus_sa = r.discord - r.s_a;
  r.best_measurement = opt.best;
  r.optimizer_restarts = options.restarts;
  r.seed = options.seed;
  r.measurement_class = options.measurement_class;
  return r;
}

BoundMargins bound_report(const DensityMatrix& rho, const OptimizerOptions& options) {
  const auto r = quantum_discord(rho, options);
  return {r.bound_margin, r.discord_sb_margin};
}

int sign_with_tolerance(double x, double tol) {
  if (x > tol) return 1;
  if (x < -tol) return -1;
  return 0;
}

}  // namespace corrbound
