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

#include "ncpt/conic.hpp"

#include <algorithm>
#include <cmath>

#include "ncpt/error.hpp"

namespace ncpt {

std::vector<double> RealMatrix::apply(std::span<const double> x) const {
    if (x.size() != cols_) {
        throw DimensionMismatch("RealMatrix::apply: size mismatch");
    }
    std::vector<double> y(rows_, 0.0);
    for (std::size_t r = 0; r < rows_; ++r) {
        double s = 0.0;
        for (std::size_t c = 0; c < cols_; ++c) {
            s += (*this)(r, c) * x[c];
        }
        y[r] = s;
    }
    return y;
}

std::vector<double> RealMatrix::apply_transpose(std::span<const double> y) const {
    if (y.size() != rows_) {
        throw DimensionMismatch("RealMatrix::apply_transpose: size mismatch");
    }
    std::vector<double> x(cols_, 0.0);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            x[c] += (*this)(r, c) * y[r];
        }
    }
    return x;
}

RealMatrix RealMatrix::transpose() const {
    RealMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            t(c, r) = (*this)(r, c);
        }
    }
    return t;
}

RealMatrix operator*(const RealMatrix& a, const RealMatrix& b) {
    if (a.cols() != b.rows()) {
        throw DimensionMismatch("RealMatrix product: inner dimensions differ");
    }
    RealMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            double aik = a(i, k);
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

RealMatrix symmetric_pseudo_inverse(const RealMatrix& s, double rel_tol) {
    const std::size_t n = s.rows();
    ComplexMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            m(i, j) = s(i, j);
        }
    }
    EigenDecomposition e = eig_hermitian(hermitian_part(m));
    double largest = 0.0;
    for (double v : e.values) {
        largest = std::max(largest, std::abs(v));
    }
    RealMatrix out(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        if (std::abs(e.values[k]) <= rel_tol * largest || e.values[k] == 0.0) {
            continue;
        }
        double inv = 1.0 / e.values[k];
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                out(i, j) += inv * (e.vectors(i, k) * std::conj(e.vectors(j, k))).real();
            }
        }
    }
    return out;
}

HermitianBasis::HermitianBasis(std::size_t k) : k_(k) {
    const double r = 1.0 / std::sqrt(2.0);
    for (std::size_t m = 0; m < k; ++m) {
        ComplexMatrix e(k);
        e(m, m) = 1.0;
        basis_.push_back(std::move(e));
    }
    for (std::size_t m = 0; m < k; ++m) {
        for (std::size_t n = m + 1; n < k; ++n) {
            ComplexMatrix sym(k);
            sym(m, n) = r;
            sym(n, m) = r;
            basis_.push_back(std::move(sym));
            ComplexMatrix anti(k);
            anti(m, n) = Complex(0.0, r);
            anti(n, m) = Complex(0.0, -r);
            basis_.push_back(std::move(anti));
        }
    }
}

std::vector<double> HermitianBasis::coordinates(const ComplexMatrix& h) const {
    if (h.dim() != k_) {
        throw DimensionMismatch("HermitianBasis::coordinates: dimension mismatch");
    }
    std::vector<double> x(size());
    for (std::size_t j = 0; j < size(); ++j) {
        // Basis elements are Hermitian, so Tr[e^H h] = Tr[e h].
        x[j] = trace_of_product(basis_[j], h).real();
    }
    return x;
}

ComplexMatrix HermitianBasis::matrix(std::span<const double> coords) const {
    if (coords.size() != size()) {
        throw DimensionMismatch("HermitianBasis::matrix: coordinate count mismatch");
    }
    ComplexMatrix m(k_);
    for (std::size_t j = 0; j < size(); ++j) {
        if (coords[j] != 0.0) {
            m += basis_[j] * coords[j];
        }
    }
    return m;
}

AffineProjector::AffineProjector(RealMatrix constraints, std::vector<double> rhs)
    : c_(std::move(constraints)), d_(std::move(rhs)) {
    if (d_.size() != c_.rows()) {
        throw DimensionMismatch("AffineProjector: rhs length differs from constraint count");
    }
    gram_pinv_ = symmetric_pseudo_inverse(c_ * c_.transpose());
}

std::vector<double> AffineProjector::project(std::span<const double> x) const {
    std::vector<double> r = c_.apply(x);
    for (std::size_t i = 0; i < r.size(); ++i) {
        r[i] -= d_[i];
    }
    std::vector<double> correction = c_.apply_transpose(gram_pinv_.apply(r));
    std::vector<double> out(x.begin(), x.end());
    for (std::size_t j = 0; j < out.size(); ++j) {
        out[j] -= correction[j];
    }
    return out;
}

double AffineProjector::residual(std::span<const double> x) const {
    std::vector<double> r = c_.apply(x);
    double worst = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        worst = std::max(worst, std::abs(r[i] - d_[i]));
    }
    return worst;
}

}  // namespace ncpt
