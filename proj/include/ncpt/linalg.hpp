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

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace ncpt {

using Complex = std::complex<double>;

/// Dense square complex matrix, row-major. Sized for the small operators used
/// throughout the library (dimension 16 or less in practice).
class ComplexMatrix {
 public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {}
    ComplexMatrix(std::size_t dim, std::vector<Complex> row_major);

    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix zero(std::size_t dim) { return ComplexMatrix(dim); }
    static ComplexMatrix diagonal(std::span<const double> values);
    /// u v^H
    static ComplexMatrix outer(std::span<const Complex> u, std::span<const Complex> v);
    /// Real-valued matrix from nested rows.
    static ComplexMatrix from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t dim() const noexcept { return dim_; }
    bool empty() const noexcept { return dim_ == 0; }

    Complex& operator()(std::size_t row, std::size_t col) { return entries_[row * dim_ + col]; }
    const Complex& operator()(std::size_t row, std::size_t col) const { return entries_[row * dim_ + col]; }

    std::span<const Complex> entries() const noexcept { return entries_; }
    std::vector<Complex> column(std::size_t col) const;

    ComplexMatrix adjoint() const;
    Complex trace() const;
    /// Largest absolute entry.
    double max_abs() const;
    bool all_finite() const;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(Complex scalar);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
    std::size_t dim_ = 0;
    std::vector<Complex> entries_;
};

/// max |a(i,j) - b(i,j)|; throws DimensionMismatch on differing sizes.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// max |m(i,j) - conj(m(j,i))|
double hermitian_defect(const ComplexMatrix& m);

/// (m + m^H) / 2
ComplexMatrix hermitian_part(const ComplexMatrix& m);

/// Tr[a b] without forming the product.
Complex trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// Matrix with entry(i,j) = conj(entry(j,i)) within 1e-12.
class HermitianMatrix {
 public:
    static constexpr double kTolerance = 1e-12;

    HermitianMatrix() = default;
    /// Throws InvariantViolation when `m` is not Hermitian within `tol`. The
    /// stored value is the exact Hermitian part of `m`.
    explicit HermitianMatrix(const ComplexMatrix& m, double tol = kTolerance);

    const ComplexMatrix& matrix() const noexcept { return m_; }
    operator const ComplexMatrix&() const noexcept { return m_; }
    std::size_t dim() const noexcept { return m_.dim(); }
    const Complex& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

 private:
    ComplexMatrix m_;
};

/// Positive semidefinite, unit-trace Hermitian matrix.
class DensityState {
 public:
    static constexpr double kPsdTolerance = 1e-10;
    static constexpr double kTraceTolerance = 1e-10;

    DensityState() = default;
    explicit DensityState(const ComplexMatrix& m);

    /// Skips the eigenvalue check; `m` must already be a state up to rounding.
    /// The Hermitian part is stored.
    static DensityState assume_valid(const ComplexMatrix& m);
    /// Hermitian part of `m` divided by its trace, without the PSD check.
    static DensityState normalized(const ComplexMatrix& m);
    static DensityState maximally_mixed(std::size_t dim);

    const ComplexMatrix& matrix() const noexcept { return m_; }
    operator const ComplexMatrix&() const noexcept { return m_; }
    std::size_t dim() const noexcept { return m_.dim(); }

 private:
    ComplexMatrix m_;
};

/// Orthogonal projection: P P = P and P = P^H.
class Projection {
 public:
    static constexpr double kTolerance = 1e-10;

    Projection() = default;
    explicit Projection(const ComplexMatrix& m, double tol = kTolerance);

    static Projection zero(std::size_t dim);
    static Projection identity(std::size_t dim);
    /// Projection onto span(v); v need not be normalized.
    static Projection onto(std::span<const Complex> v);
    /// Rank-one projection on R^2 onto (cos t, sin t).
    static Projection at_angle(double radians);

    const ComplexMatrix& matrix() const noexcept { return m_; }
    operator const ComplexMatrix&() const noexcept { return m_; }
    std::size_t dim() const noexcept { return m_.dim(); }
    /// Rounded trace.
    std::size_t rank() const;
    /// I - P
    Projection complement() const;

 private:
    struct Trusted {};
    Projection(Trusted, ComplexMatrix m) : m_(std::move(m)) {}
    ComplexMatrix m_;
};

struct EigenDecomposition {
    /// Descending.
    std::vector<double> values;
    /// Orthonormal eigenvectors stored as columns, matching `values`.
    ComplexMatrix vectors;
};

/// Cyclic Jacobi eigen-decomposition. Throws NonHermitianInput when the input
/// deviates from Hermitian symmetry by more than 1e-8.
EigenDecomposition eig_hermitian(const ComplexMatrix& h);

double min_eigenvalue(const ComplexMatrix& h);

/// True iff the smallest eigenvalue is >= -tol.
bool is_psd(const ComplexMatrix& h, double tol = DensityState::kPsdTolerance);

/// V f(diag) V^H for a Hermitian input.
ComplexMatrix hermitian_function(const ComplexMatrix& h, const std::function<double(double)>& f);

/// Nearest PSD matrix in Frobenius norm (negative eigenvalues clipped).
ComplexMatrix project_psd(const ComplexMatrix& h);

/// Singular values (descending) and right singular vectors (columns) of m,
/// computed with one-sided Jacobi rotations.
struct SingularDecomposition {
    std::vector<double> values;
    ComplexMatrix right_vectors;
};
SingularDecomposition singular_decomposition(const ComplexMatrix& m);

/// Number of singular values above max(1e-8 * largest, 1e-12).
std::size_t numerical_rank(const ComplexMatrix& m);

/// Orthogonal projection onto the null space of m.
Projection projection_onto_nullspace(const ComplexMatrix& m);

/// ms[0] * ms[1] * ... * ms[n-1]. Throws DimensionMismatch; the list must be nonempty.
ComplexMatrix product_chain(std::span<const ComplexMatrix> ms);

}  // namespace ncpt
