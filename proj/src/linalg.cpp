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

#include "ncpt/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ncpt/error.hpp"

namespace ncpt {

namespace {

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
    if (a.dim() != b.dim()) {
        throw DimensionMismatch(std::string(what) + ": " + std::to_string(a.dim()) + " vs " +
                                std::to_string(b.dim()));
    }
}

// Unitary 2x2 rotation G (acting on coordinates p, q) with G^H B G diagonal for
// the Hermitian block B = [[app, apq], [conj(apq), aqq]].
struct Rotation {
    Complex pp, pq, qp, qq;
};

Rotation jacobi_rotation(double app, double aqq, Complex apq) {
    double mag = std::abs(apq);
    Complex phase = apq / mag;
    double theta = (aqq - app) / (2.0 * mag);
    double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    double c = 1.0 / std::sqrt(1.0 + t * t);
    double s = t * c;
    Complex cp = std::conj(phase);
    return {c, s, -s * cp, c * cp};
}

// m <- m G restricted to columns p, q.
void rotate_columns(ComplexMatrix& m, std::size_t p, std::size_t q, const Rotation& g) {
    for (std::size_t k = 0; k < m.dim(); ++k) {
        Complex mp = m(k, p);
        Complex mq = m(k, q);
        m(k, p) = mp * g.pp + mq * g.qp;
        m(k, q) = mp * g.pq + mq * g.qq;
    }
}

// m <- G^H m restricted to rows p, q.
void rotate_rows(ComplexMatrix& m, std::size_t p, std::size_t q, const Rotation& g) {
    for (std::size_t k = 0; k < m.dim(); ++k) {
        Complex mp = m(p, k);
        Complex mq = m(q, k);
        m(p, k) = std::conj(g.pp) * mp + std::conj(g.qp) * mq;
        m(q, k) = std::conj(g.pq) * mp + std::conj(g.qq) * mq;
    }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> row_major)
    : dim_(dim), entries_(std::move(row_major)) {
    if (entries_.size() != dim * dim) {
        throw DimensionMismatch("ComplexMatrix: expected " + std::to_string(dim * dim) + " entries, got " +
                                std::to_string(entries_.size()));
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        m(i, i) = values[i];
    }
    return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> u, std::span<const Complex> v) {
    if (u.size() != v.size()) {
        throw DimensionMismatch("outer: vector sizes differ");
    }
    ComplexMatrix m(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        for (std::size_t j = 0; j < v.size(); ++j) {
            m(i, j) = u[i] * std::conj(v[j]);
        }
    }
    return m;
}

ComplexMatrix ComplexMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    ComplexMatrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.size()) {
            throw DimensionMismatch("from_rows: matrix is not square");
        }
        for (std::size_t j = 0; j < rows.size(); ++j) {
            m(i, j) = rows[i][j];
        }
    }
    return m;
}

std::vector<Complex> ComplexMatrix::column(std::size_t col) const {
    std::vector<Complex> out(dim_);
    for (std::size_t r = 0; r < dim_; ++r) {
        out[r] = (*this)(r, col);
    }
    return out;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j < dim_; ++j) {
            out(j, i) = std::conj((*this)(i, j));
        }
    }
    return out;
}

Complex ComplexMatrix::trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
        t += (*this)(i, i);
    }
    return t;
}

double ComplexMatrix::max_abs() const {
    double best = 0.0;
    for (const auto& z : entries_) {
        best = std::max(best, std::abs(z));
    }
    return best;
}

bool ComplexMatrix::all_finite() const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    require_same_dim(*this, other, "operator+");
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        entries_[k] += other.entries_[k];
    }
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    require_same_dim(*this, other, "operator-");
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        entries_[k] -= other.entries_[k];
    }
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scalar) {
    for (auto& z : entries_) {
        z *= scalar;
    }
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b, "operator*");
    const std::size_t n = a.dim();
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            Complex aik = a(i, k);
            if (aik == Complex{}) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b, "max_abs_diff");
    double best = 0.0;
    auto ea = a.entries();
    auto eb = b.entries();
    for (std::size_t k = 0; k < ea.size(); ++k) {
        best = std::max(best, std::abs(ea[k] - eb[k]));
    }
    return best;
}

double hermitian_defect(const ComplexMatrix& m) {
    double best = 0.0;
    for (std::size_t i = 0; i < m.dim(); ++i) {
        for (std::size_t j = i; j < m.dim(); ++j) {
            best = std::max(best, std::abs(m(i, j) - std::conj(m(j, i))));
        }
    }
    return best;
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
    ComplexMatrix out(m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i) {
        out(i, i) = m(i, i).real();
        for (std::size_t j = i + 1; j < m.dim(); ++j) {
            Complex z = 0.5 * (m(i, j) + std::conj(m(j, i)));
            out(i, j) = z;
            out(j, i) = std::conj(z);
        }
    }
    return out;
}

Complex trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b, "trace_of_product");
    Complex t = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t k = 0; k < a.dim(); ++k) {
            t += a(i, k) * b(k, i);
        }
    }
    return t;
}

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m, double tol) {
    if (!m.all_finite()) {
        throw InvariantViolation("HermitianMatrix.finite", "matrix has NaN or Inf entries");
    }
    double defect = hermitian_defect(m);
    if (defect > tol) {
        throw InvariantViolation("HermitianMatrix.symmetric", "deviation " + std::to_string(defect));
    }
    m_ = hermitian_part(m);
}

DensityState::DensityState(const ComplexMatrix& m) {
    HermitianMatrix h(m, 1e-10);
    double tr_err = std::abs(h.matrix().trace() - 1.0);
    if (tr_err > kTraceTolerance) {
        throw InvariantViolation("DensityState.trace", "trace differs from 1 by " + std::to_string(tr_err));
    }
    double lo = min_eigenvalue(h);
    if (lo < -kPsdTolerance) {
        throw InvariantViolation("DensityState.psd", "min eigenvalue " + std::to_string(lo));
    }
    m_ = h.matrix();
}

DensityState DensityState::assume_valid(const ComplexMatrix& m) {
    DensityState s;
    s.m_ = hermitian_part(m);
    return s;
}

DensityState DensityState::normalized(const ComplexMatrix& m) {
    DensityState s;
    s.m_ = hermitian_part(m);
    s.m_ *= 1.0 / s.m_.trace().real();
    return s;
}

DensityState DensityState::maximally_mixed(std::size_t dim) {
    return assume_valid(ComplexMatrix::identity(dim) * (1.0 / static_cast<double>(dim)));
}

Projection::Projection(const ComplexMatrix& m, double tol) {
    HermitianMatrix h(m, tol);
    double defect = max_abs_diff(h.matrix() * h.matrix(), h.matrix());
    if (defect > tol) {
        throw InvariantViolation("Projection.idempotent", "max |P*P - P| = " + std::to_string(defect));
    }
    m_ = h.matrix();
}

Projection Projection::zero(std::size_t dim) { return Projection(Trusted{}, ComplexMatrix::zero(dim)); }

Projection Projection::identity(std::size_t dim) { return Projection(Trusted{}, ComplexMatrix::identity(dim)); }

Projection Projection::onto(std::span<const Complex> v) {
    double norm2 = 0.0;
    for (const auto& z : v) {
        norm2 += std::norm(z);
    }
    if (norm2 == 0.0) {
        throw InvariantViolation("Projection.onto", "zero vector");
    }
    ComplexMatrix m = ComplexMatrix::outer(v, v);
    m *= 1.0 / norm2;
    return Projection(Trusted{}, hermitian_part(m));
}

Projection Projection::at_angle(double radians) {
    std::vector<Complex> v{std::cos(radians), std::sin(radians)};
    return onto(v);
}

std::size_t Projection::rank() const { return static_cast<std::size_t>(std::lround(m_.trace().real())); }

Projection Projection::complement() const {
    return Projection(Trusted{}, ComplexMatrix::identity(dim()) - m_);
}

EigenDecomposition eig_hermitian(const ComplexMatrix& h) {
    if (!h.all_finite()) {
        throw NonHermitianInput("eig_hermitian: non-finite entries");
    }
    double defect = hermitian_defect(h);
    if (defect > 1e-8) {
        throw NonHermitianInput("eig_hermitian: symmetry violated by " + std::to_string(defect));
    }
    const std::size_t n = h.dim();
    ComplexMatrix a = hermitian_part(h);
    ComplexMatrix v = ComplexMatrix::identity(n);

    double total = 0.0;
    for (const auto& z : a.entries()) {
        total += std::norm(z);
    }
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                off += std::norm(a(p, q));
            }
        }
        if (off <= 1e-32 * total || off == 0.0) {
            break;
        }
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                Complex apq = a(p, q);
                if (std::abs(apq) < 1e-300) {
                    continue;
                }
                Rotation g = jacobi_rotation(a(p, p).real(), a(q, q).real(), apq);
                rotate_columns(a, p, q, g);
                rotate_rows(a, p, q, g);
                rotate_columns(v, p, q, g);
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a(x, x).real() > a(y, y).real(); });
    EigenDecomposition out{std::vector<double>(n), ComplexMatrix(n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (std::size_t r = 0; r < n; ++r) {
            out.vectors(r, k) = v(r, order[k]);
        }
    }
    return out;
}

double min_eigenvalue(const ComplexMatrix& h) {
    if (h.dim() == 0) {
        return 0.0;
    }
    return eig_hermitian(h).values.back();
}

bool is_psd(const ComplexMatrix& h, double tol) { return min_eigenvalue(h) >= -tol; }

ComplexMatrix hermitian_function(const ComplexMatrix& h, const std::function<double(double)>& f) {
    EigenDecomposition e = eig_hermitian(h);
    const std::size_t n = h.dim();
    ComplexMatrix out(n);
    for (std::size_t k = 0; k < n; ++k) {
        double fk = f(e.values[k]);
        if (fk == 0.0) {
            continue;
        }
        for (std::size_t i = 0; i < n; ++i) {
            Complex vik = e.vectors(i, k) * fk;
            for (std::size_t j = 0; j < n; ++j) {
                out(i, j) += vik * std::conj(e.vectors(j, k));
            }
        }
    }
    return hermitian_part(out);
}

ComplexMatrix project_psd(const ComplexMatrix& h) {
    return hermitian_function(h, [](double x) { return x > 0.0 ? x : 0.0; });
}

SingularDecomposition singular_decomposition(const ComplexMatrix& m) {
    const std::size_t n = m.dim();
    ComplexMatrix w = m;
    ComplexMatrix v = ComplexMatrix::identity(n);
    auto column_dot = [&](std::size_t p, std::size_t q) {
        Complex s = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            s += std::conj(w(k, p)) * w(k, q);
        }
        return s;
    };
    auto column_norm2 = [&](std::size_t p) {
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            s += std::norm(w(k, p));
        }
        return s;
    };
    for (int sweep = 0; sweep < 100; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double alpha = column_norm2(p);
                double beta = column_norm2(q);
                Complex gamma = column_dot(p, q);
                if (std::abs(gamma) <= 1e-15 * std::sqrt(alpha * beta) || std::abs(gamma) < 1e-300) {
                    continue;
                }
                rotated = true;
                Rotation g = jacobi_rotation(alpha, beta, gamma);
                rotate_columns(w, p, q, g);
                rotate_columns(v, p, q, g);
            }
        }
        if (!rotated) {
            break;
        }
    }
    std::vector<double> sigma(n);
    for (std::size_t p = 0; p < n; ++p) {
        sigma[p] = std::sqrt(column_norm2(p));
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });
    SingularDecomposition out{std::vector<double>(n), ComplexMatrix(n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = sigma[order[k]];
        for (std::size_t r = 0; r < n; ++r) {
            out.right_vectors(r, k) = v(r, order[k]);
        }
    }
    return out;
}

namespace {

double rank_threshold(const std::vector<double>& sigma) {
    double largest = sigma.empty() ? 0.0 : sigma.front();
    return std::max(1e-8 * largest, 1e-12);
}

}  // namespace

std::size_t numerical_rank(const ComplexMatrix& m) {
    SingularDecomposition s = singular_decomposition(m);
    double cut = rank_threshold(s.values);
    return static_cast<std::size_t>(
        std::count_if(s.values.begin(), s.values.end(), [cut](double x) { return x > cut; }));
}

Projection projection_onto_nullspace(const ComplexMatrix& m) {
    const std::size_t n = m.dim();
    SingularDecomposition s = singular_decomposition(m);
    double cut = rank_threshold(s.values);
    ComplexMatrix q(n);
    for (std::size_t k = 0; k < n; ++k) {
        if (s.values[k] > cut) {
            continue;
        }
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                q(i, j) += s.right_vectors(i, k) * std::conj(s.right_vectors(j, k));
            }
        }
    }
    return Projection(hermitian_part(q));
}

ComplexMatrix product_chain(std::span<const ComplexMatrix> ms) {
    if (ms.empty()) {
        throw DimensionMismatch("product_chain: empty list");
    }
    ComplexMatrix out = ms.front();
    for (std::size_t k = 1; k < ms.size(); ++k) {
        out = out * ms[k];
    }
    return out;
}

}  // namespace ncpt
