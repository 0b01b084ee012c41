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

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace corrbound {

using Complex = std::complex<double>;

/// Thrown whenever an input violates a documented invariant. `invariant()`
/// names the violated condition (e.g. "psd", "trace", "dimension").
class InvalidInput : public std::invalid_argument {
 public:
  InvalidInput(std::string invariant, const std::string& detail);

  const std::string& invariant() const noexcept { return invariant_; }

 private:
  std::string invariant_;
};

/// Dense row-major complex matrix. Entries are always finite.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> diag);
  /// |ket><bra|
  static ComplexMatrix outer(std::span<const Complex> ket, std::span<const Complex> bra);
  static ComplexMatrix column_vector(std::span<const Complex> v);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  Complex operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

  std::span<const Complex> entries() const noexcept { return data_; }
  std::vector<Complex> column(std::size_t j) const;
  std::vector<Complex> row(std::size_t i) const;

  ComplexMatrix adjoint() const;
  Complex trace() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

  bool operator==(const ComplexMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

std::vector<Complex> operator*(const ComplexMatrix& m, std::span<const Complex> v);

/// Tensor-factor dimensions of a composite space, outermost factor first
/// (index of |i>|j> is i * dims[1] + j).
class DimSplit {
 public:
  explicit DimSplit(std::vector<std::size_t> dims);
  static DimSplit bipartite(std::size_t dim_a, std::size_t dim_b) { return DimSplit({dim_a, dim_b}); }
  static DimSplit single(std::size_t dim) { return DimSplit({dim}); }

  std::size_t factors() const noexcept { return dims_.size(); }
  std::size_t operator[](std::size_t i) const { return dims_.at(i); }
  std::span<const std::size_t> dims() const noexcept { return dims_; }
  std::size_t total() const noexcept;

  bool is_bipartite() const noexcept { return dims_.size() == 2; }
  std::size_t dim_a() const { return dims_.at(0); }
  std::size_t dim_b() const { return dims_.at(1); }

  /// Split restricted to the listed factors, in the listed order.
  DimSplit select(std::span<const std::size_t> keep) const;
  /// "2x3" style label.
  std::string label() const;

  bool operator==(const DimSplit&) const = default;

 private:
  std::vector<std::size_t> dims_;
};

double max_abs(const ComplexMatrix& m);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double frobenius_norm(const ComplexMatrix& m);
/// max |M - M^dagger| entry.
double hermiticity_defect(const ComplexMatrix& m);
/// (M + M^dagger) / 2
ComplexMatrix hermitian_part(const ComplexMatrix& m);
/// max |U^dagger U - 1| entry; U may be rectangular (isometry check).
double isometry_defect(const ComplexMatrix& u);
double unitarity_defect(const ComplexMatrix& u);

/// Kronecker product; block (i, j) of the result is a(i, j) * b.
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// Reduced operator on the factors listed in `keep` (strictly increasing).
/// The other factors are traced out.
ComplexMatrix partial_trace(const ComplexMatrix& m, const DimSplit& split,
                            std::span<const std::size_t> keep);

/// Reorders tensor factors: result factor i is input factor order[i].
ComplexMatrix permute_factors(const ComplexMatrix& m, const DimSplit& split,
                              std::span<const std::size_t> order);

struct EigenSystem {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // column i pairs with values[i]
};

/// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
/// Inputs with hermiticity_defect above `hermitian_tol` are rejected;
/// smaller asymmetry is removed by symmetrizing first.
EigenSystem hermitian_eigensystem(const ComplexMatrix& m, double hermitian_tol = 1e-10);

/// Q diag(f(lambda)) Q^dagger for a Hermitian input.
template <typename F>
ComplexMatrix hermitian_function(const EigenSystem& es, F&& f) {
  const std::size_t n = es.values.size();
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const Complex fk = f(es.values[k]);
    if (fk == Complex{}) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const Complex left = es.vectors(i, k) * fk;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += left * std::conj(es.vectors(j, k));
    }
  }
  return out;
}

/// exp(iH) for Hermitian H.
ComplexMatrix unitary_exp(const ComplexMatrix& hermitian);

/// Principal square root of a PSD matrix; eigenvalues in [-tol, 0) are clipped.
ComplexMatrix psd_sqrt(const ComplexMatrix& m, double tol = 1e-10);

enum class Orientation {
  kColumns,  // n x k isometry: columns orthonormal, result keeps them as leading columns
  kRows,     // k x n co-isometry: rows orthonormal, result keeps them as leading rows
};

/// Extends an isometry (or co-isometry) to a unitary. The given block is
/// copied verbatim; the complement is filled by Gram-Schmidt over the
/// standard basis in index order, skipping candidates whose residual norm is
/// below 1e-8.
ComplexMatrix complete_to_unitary(const ComplexMatrix& iso, Orientation orientation,
                                  double tol = 1e-10);

}  // namespace corrbound
