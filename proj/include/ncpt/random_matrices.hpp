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

#include <cmath>
#include <random>
#include <vector>

#include "ncpt/linalg.hpp"

namespace ncpt {

template <class Rng>
Complex random_gaussian_complex(Rng& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    double re = n(rng);
    double im = n(rng);
    return {re, im};
}

/// Entries with independent standard complex Gaussian parts (Ginibre ensemble).
template <class Rng>
ComplexMatrix random_ginibre(std::size_t dim, Rng& rng, bool real_only = false) {
    ComplexMatrix m(dim);
    std::normal_distribution<double> n(0.0, 1.0);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            double re = n(rng);
            double im = real_only ? 0.0 : n(rng);
            m(i, j) = {re, im};
        }
    }
    return m;
}

template <class Rng>
HermitianMatrix random_hermitian(std::size_t dim, Rng& rng) {
    ComplexMatrix g = random_ginibre(dim, rng);
    return HermitianMatrix(hermitian_part(g));
}

/// Full-rank random state G G^H / Tr.
template <class Rng>
DensityState random_density_state(std::size_t dim, Rng& rng, bool real_only = false) {
    ComplexMatrix g = random_ginibre(dim, rng, real_only);
    return DensityState::normalized(g * g.adjoint());
}

/// Pure state v v^H for a random unit vector v.
template <class Rng>
DensityState random_pure_state(std::size_t dim, Rng& rng) {
    std::vector<Complex> v(dim);
    for (auto& z : v) {
        z = random_gaussian_complex(rng);
    }
    return DensityState::normalized(ComplexMatrix::outer(v, v));
}

/// Projection onto the span of `rank` random vectors.
template <class Rng>
Projection random_projection(std::size_t dim, std::size_t rank, Rng& rng, bool real_only = false) {
    std::vector<std::vector<Complex>> basis;
    std::normal_distribution<double> n(0.0, 1.0);
    while (basis.size() < rank) {
        std::vector<Complex> v(dim);
        for (auto& z : v) {
            double re = n(rng);
            double im = real_only ? 0.0 : n(rng);
            z = {re, im};
        }
        for (const auto& b : basis) {
            Complex dot = 0.0;
            for (std::size_t i = 0; i < dim; ++i) {
                dot += std::conj(b[i]) * v[i];
            }
            for (std::size_t i = 0; i < dim; ++i) {
                v[i] -= dot * b[i];
            }
        }
        double norm = 0.0;
        for (const auto& z : v) {
            norm += std::norm(z);
        }
        norm = std::sqrt(norm);
        if (norm < 1e-6) {
            continue;
        }
        for (auto& z : v) {
            z /= norm;
        }
        basis.push_back(std::move(v));
    }
    ComplexMatrix p(dim);
    for (const auto& b : basis) {
        p += ComplexMatrix::outer(b, b);
    }
    return Projection(hermitian_part(p), 1e-9);
}

}  // namespace ncpt
