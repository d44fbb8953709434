// Copyright 2026 The ncpt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ncpt/linalg.hpp"

namespace ncpt {

/// Dense real matrix, row-major, arbitrary shape.
class RealMatrix {
 public:
    RealMatrix() = default;
    RealMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::vector<double> apply(std::span<const double> x) const;
    std::vector<double> apply_transpose(std::span<const double> y) const;
    RealMatrix transpose() const;
    friend RealMatrix operator*(const RealMatrix& a, const RealMatrix& b);

 private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Moore-Penrose pseudo-inverse of a symmetric matrix; eigenvalues below
/// rel_tol * largest are treated as zero.
RealMatrix symmetric_pseudo_inverse(const RealMatrix& s, double rel_tol = 1e-12);

/// Orthonormal basis of the real vector space of k x k Hermitian matrices
/// under <A, B> = Tr[A^H B]: the diagonal units E_mm, then for m < n the pairs
/// (E_mn + E_nm)/sqrt 2 and i(E_mn - E_nm)/sqrt 2.
class HermitianBasis {
 public:
    explicit HermitianBasis(std::size_t k);

    std::size_t dim() const noexcept { return k_; }
    std::size_t size() const noexcept { return k_ * k_; }
    const ComplexMatrix& element(std::size_t j) const { return basis_[j]; }

    /// Real coordinates of a Hermitian matrix.
    std::vector<double> coordinates(const ComplexMatrix& h) const;
    ComplexMatrix matrix(std::span<const double> coords) const;

 private:
    std::size_t k_;
    std::vector<ComplexMatrix> basis_;
};

/// Euclidean projection onto {x : C x = d}; when the system is inconsistent,
/// onto its least-squares solution set {x : C^T C x = C^T d}.
class AffineProjector {
 public:
    AffineProjector(RealMatrix constraints, std::vector<double> rhs);

    std::vector<double> project(std::span<const double> x) const;
    /// max_i |(C x - d)_i|
    double residual(std::span<const double> x) const;
    const RealMatrix& constraints() const noexcept { return c_; }

 private:
    RealMatrix c_;
    RealMatrix gram_pinv_;
    std::vector<double> d_;
};

}  // namespace ncpt
