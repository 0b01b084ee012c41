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

#include "corrbound/tensor_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>

namespace corrbound {

namespace {

constexpr double kJacobiOffDiagTol = 1e-12;
constexpr int kJacobiMaxSweeps = 100;
constexpr double kFillSkipNorm = 1e-8;

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InvalidInput("dimension", fmt::format("{}: shape {}x{} vs {}x{}", what, a.rows(), a.cols(),
                                                b.rows(), b.cols()));
  }
}

double dot_norm(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  return std::sqrt(s);
}

}  // namespace

InvalidInput::InvalidInput(std::string invariant, const std::string& detail)
    : std::invalid_argument(fmt::format("{}: {}", invariant, detail)), invariant_(std::move(invariant)) {}

// ---------------------------------------------------------------------------
// ComplexMatrix

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    throw InvalidInput("dimension", fmt::format("{} entries for a {}x{} matrix", data_.size(), rows_, cols_));
  }
  for (const auto& z : data_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw InvalidInput("finite", "matrix entry is NaN or infinite");
    }
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> diag) {
  ComplexMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> ket, std::span<const Complex> bra) {
  ComplexMatrix m(ket.size(), bra.size());
  for (std::size_t i = 0; i < ket.size(); ++i)
    for (std::size_t j = 0; j < bra.size(); ++j) m(i, j) = ket[i] * std::conj(bra[j]);
  return m;
}

ComplexMatrix ComplexMatrix::column_vector(std::span<const Complex> v) {
  return ComplexMatrix(v.size(), 1, std::vector<Complex>(v.begin(), v.end()));
}

std::vector<Complex> ComplexMatrix::column(std::size_t j) const {
  std::vector<Complex> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return out;
}

std::vector<Complex> ComplexMatrix::row(std::size_t i) const {
  return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
          data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

Complex ComplexMatrix::trace() const {
  Complex t{};
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "matrix sum");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same_shape(*this, other, "matrix difference");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (auto& z : data_) z *= scale;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw InvalidInput("dimension", fmt::format("matrix product {}x{} * {}x{}", a.rows(), a.cols(), b.rows(),
                                                b.cols()));
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

std::vector<Complex> operator*(const ComplexMatrix& m, std::span<const Complex> v) {
  if (m.cols() != v.size()) throw InvalidInput("dimension", "matrix-vector product");
  std::vector<Complex> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i] += m(i, j) * v[j];
  return out;
}

// ---------------------------------------------------------------------------
// DimSplit

DimSplit::DimSplit(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw InvalidInput("dimension", "a dimension split needs at least one factor");
  for (auto d : dims_) {
    if (d == 0) throw InvalidInput("dimension", "tensor factor of dimension 0");
  }
}

std::size_t DimSplit::total() const noexcept {
  return std::accumulate(dims_.begin(), dims_.end(), std::size_t{1}, std::multiplies<>());
}

DimSplit DimSplit::select(std::span<const std::size_t> keep) const {
  std::vector<std::size_t> out;
  out.reserve(keep.size());
  for (auto k : keep) out.push_back(dims_.at(k));
  return DimSplit(std::move(out));
}

std::string DimSplit::label() const {
  std::string s;
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (i) s += 'x';
    s += std::to_string(dims_[i]);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Norms and checks

double max_abs(const ComplexMatrix& m) {
  double r = 0.0;
  for (const auto& z : m.entries()) r = std::max(r, std::abs(z));
  return r;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double r = 0.0;
  auto ea = a.entries();
  auto eb = b.entries();
  for (std::size_t k = 0; k < ea.size(); ++k) r = std::max(r, std::abs(ea[k] - eb[k]));
  return r;
}

double frobenius_norm(const ComplexMatrix& m) { return dot_norm(m.entries()); }

double hermiticity_defect(const ComplexMatrix& m) {
  if (!m.is_square()) throw InvalidInput("square", "hermiticity requires a square matrix");
  double r = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i; j < m.cols(); ++j) r = std::max(r, std::abs(m(i, j) - std::conj(m(j, i))));
  return r;
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  if (!m.is_square()) throw InvalidInput("square", "hermitian part requires a square matrix");
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out(i, i) = m(i, i).real();
    for (std::size_t j = i + 1; j < m.cols(); ++j) {
      const Complex z = 0.5 * (m(i, j) + std::conj(m(j, i)));
      out(i, j) = z;
      out(j, i) = std::conj(z);
    }
  }
  return out;
}

double isometry_defect(const ComplexMatrix& u) {
  return max_abs_diff(u.adjoint() * u, ComplexMatrix::identity(u.cols()));
}

double unitarity_defect(const ComplexMatrix& u) {
  if (!u.is_square()) return std::numeric_limits<double>::infinity();
  return std::max(isometry_defect(u), max_abs_diff(u * u.adjoint(), ComplexMatrix::identity(u.rows())));
}

// ---------------------------------------------------------------------------
// Tensor structure

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex{}) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  }
  return out;
}

namespace {

// Flat offsets contributed by the listed factors, enumerated in row-major
// order over those factors.
std::vector<std::size_t> factor_offsets(const DimSplit& split, std::span<const std::size_t> which) {
  const auto dims = split.dims();
  std::vector<std::size_t> stride(dims.size(), 1);
  for (std::size_t i = dims.size(); i-- > 1;) stride[i - 1] = stride[i] * dims[i];

  std::vector<std::size_t> offsets{0};
  for (auto f : which) {
    std::vector<std::size_t> next;
    next.reserve(offsets.size() * dims[f]);
    for (auto base : offsets)
      for (std::size_t d = 0; d < dims[f]; ++d) next.push_back(base + d * stride[f]);
    offsets = std::move(next);
  }
  return offsets;
}

}  // namespace

ComplexMatrix partial_trace(const ComplexMatrix& m, const DimSplit& split, std::span<const std::size_t> keep) {
  if (!m.is_square() || m.rows() != split.total()) {
    throw InvalidInput("dimension", fmt::format("partial trace: {}x{} matrix with split {}", m.rows(), m.cols(),
                                                split.label()));
  }
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] >= split.factors() || (i > 0 && keep[i] <= keep[i - 1])) {
      throw InvalidInput("dimension", "partial trace: kept factors must be increasing and in range");
    }
  }
  std::vector<std::size_t> traced;
  for (std::size_t f = 0; f < split.factors(); ++f) {
    if (std::find(keep.begin(), keep.end(), f) == keep.end()) traced.push_back(f);
  }
  const auto kept_off = factor_offsets(split, keep);
  const auto traced_off = factor_offsets(split, traced);

  const std::size_t n = kept_off.size();
  ComplexMatrix out(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      Complex s{};
      for (auto t : traced_off) s += m(kept_off[r] + t, kept_off[c] + t);
      out(r, c) = s;
    }
  }
  return out;
}

ComplexMatrix permute_factors(const ComplexMatrix& m, const DimSplit& split, std::span<const std::size_t> order) {
  if (!m.is_square() || m.rows() != split.total() || order.size() != split.factors()) {
    throw InvalidInput("dimension", "permute_factors: shape or order mismatch");
  }
  std::vector<bool> seen(order.size(), false);
  for (auto f : order) {
    if (f >= order.size() || seen[f]) throw InvalidInput("dimension", "permute_factors: order is not a permutation");
    seen[f] = true;
  }
  // new index enumerated row-major over `order` factors maps to old offset
  const auto map = factor_offsets(split, order);
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < map.size(); ++r)
    for (std::size_t c = 0; c < map.size(); ++c) out(r, c) = m(map[r], map[c]);
  return out;
}

// ---------------------------------------------------------------------------
// Eigensystem

EigenSystem hermitian_eigensystem(const ComplexMatrix& m, double hermitian_tol) {
  const double defect = hermiticity_defect(m);
  if (defect > hermitian_tol) {
    throw InvalidInput("hermitian", fmt::format("asymmetry {:.3e} exceeds {:.1e}", defect, hermitian_tol));
  }
  const std::size_t n = m.rows();
  ComplexMatrix a = hermitian_part(m);
  ComplexMatrix q = ComplexMatrix::identity(n);

  const double scale = std::max(1.0, frobenius_norm(a));
  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * std::norm(a(i, j));
    return std::sqrt(s);
  };

  for (int sweep = 0; sweep < kJacobiMaxSweeps && off_norm() > kJacobiOffDiagTol * scale; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t r = p + 1; r < n; ++r) {
        const Complex apr = a(p, r);
        const double g = std::abs(apr);
        if (g < 1e-300) continue;
        const Complex phase = apr / g;
        const double app = a(p, p).real();
        const double arr = a(r, r).real();
        const double theta = 0.5 * std::atan2(2.0 * g, arr - app);
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        // J = diag(1, conj(phase)) * [[c, s], [-s, c]]
        const Complex jpp = c;
        const Complex jpr = s;
        const Complex jrp = -s * std::conj(phase);
        const Complex jrr = c * std::conj(phase);

        for (std::size_t k = 0; k < n; ++k) {  // A <- A J
          const Complex akp = a(k, p);
          const Complex akr = a(k, r);
          a(k, p) = akp * jpp + akr * jrp;
          a(k, r) = akp * jpr + akr * jrr;
        }
        for (std::size_t k = 0; k < n; ++k) {  // A <- J^dagger A
          const Complex apk = a(p, k);
          const Complex ark = a(r, k);
          a(p, k) = std::conj(jpp) * apk + std::conj(jrp) * ark;
          a(r, k) = std::conj(jpr) * apk + std::conj(jrr) * ark;
        }
        a(p, r) = 0.0;
        a(r, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(r, r) = a(r, r).real();
        for (std::size_t k = 0; k < n; ++k) {  // Q <- Q J
          const Complex qkp = q(k, p);
          const Complex qkr = q(k, r);
          q(k, p) = qkp * jpp + qkr * jrp;
          q(k, r) = qkp * jpr + qkr * jrr;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });

  EigenSystem es{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    es.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) es.vectors(i, k) = q(i, order[k]);
  }
  return es;
}

ComplexMatrix unitary_exp(const ComplexMatrix& hermitian) {
  const auto es = hermitian_eigensystem(hermitian);
  return hermitian_function(es, [](double x) { return std::polar(1.0, x); });
}

ComplexMatrix psd_sqrt(const ComplexMatrix& m, double tol) {
  const auto es = hermitian_eigensystem(m);
  if (!es.values.empty() && es.values.front() < -tol) {
    throw InvalidInput("psd", fmt::format("eigenvalue {:.3e} below -{:.1e}", es.values.front(), tol));
  }
  return hermitian_function(es, [](double x) { return Complex(x > 0.0 ? std::sqrt(x) : 0.0); });
}

// ---------------------------------------------------------------------------
// Unitary completion

ComplexMatrix complete_to_unitary(const ComplexMatrix& iso, Orientation orientation, double tol) {
  if (orientation == Orientation::kRows) {
    return complete_to_unitary(iso.adjoint(), Orientation::kColumns, tol).adjoint();
  }
  const std::size_t n = iso.rows();
  const std::size_t k = iso.cols();
  if (k > n) throw InvalidInput("dimension", fmt::format("{} columns cannot be orthonormal in dimension {}", k, n));
  const double defect = isometry_defect(iso);
  if (defect > tol) {
    throw InvalidInput("orthonormal", fmt::format("isometry defect {:.3e} exceeds {:.1e}", defect, tol));
  }

  std::vector<std::vector<Complex>> basis;
  basis.reserve(n);
  for (std::size_t j = 0; j < k; ++j) basis.push_back(iso.column(j));

  for (std::size_t e = 0; e < n && basis.size() < n; ++e) {
    std::vector<Complex> v(n);
    v[e] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) {
        Complex proj{};
        for (std::size_t i = 0; i < n; ++i) proj += std::conj(b[i]) * v[i];
        for (std::size_t i = 0; i < n; ++i) v[i] -= proj * b[i];
      }
    }
    const double norm = dot_norm(v);
    if (norm < kFillSkipNorm) continue;
    for (auto& x : v) x /= norm;
    basis.push_back(std::move(v));
  }
  if (basis.size() != n) throw InvalidInput("orthonormal", "unitary completion failed to span the space");

  ComplexMatrix u(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) u(i, j) = basis[j][i];
  return u;
}

}  // namespace corrbound
