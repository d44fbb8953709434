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
#include <vector>

#include "ncpt/detection.hpp"
#include "ncpt/random_matrices.hpp"
#include "ncpt/rng.hpp"

namespace ncpt::testing {

/// Random POVM with n elements on C^k: M(i) = S^{-1/2} G_i G_i^H S^{-1/2}
/// with S = sum_i G_i G_i^H and Ginibre G_i.
template <class Rng>
Povm random_povm(std::size_t n, std::size_t k, Rng& rng, bool real_only = false) {
    std::vector<ComplexMatrix> gs;
    ComplexMatrix s(k);
    for (std::size_t i = 0; i < n; ++i) {
        ComplexMatrix g = random_ginibre(k, rng, real_only);
        gs.push_back(hermitian_part(g * g.adjoint()));
        s += gs.back();
    }
    ComplexMatrix inv_sqrt = hermitian_function(hermitian_part(s), [](double l) { return 1.0 / std::sqrt(l); });
    std::vector<HermitianMatrix> elements;
    for (const auto& g : gs) {
        elements.emplace_back(hermitian_part(inv_sqrt * g * inv_sqrt));
    }
    return Povm(std::move(elements));
}

/// Random probability vector of length n with entries bounded away from 0.
template <class Rng>
std::vector<double> random_distribution(std::size_t n, Rng& rng) {
    std::vector<double> p(n);
    double total = 0.0;
    for (auto& v : p) {
        v = 0.05 + rng.uniform();
        total += v;
    }
    for (auto& v : p) {
        v /= total;
    }
    return p;
}

/// Random rank-one PVM with n outcomes on C^n (a random orthonormal basis).
template <class Rng>
Povm random_basis_pvm(std::size_t n, Rng& rng) {
    EigenDecomposition e = eig_hermitian(random_hermitian(n, rng).matrix());
    std::vector<HermitianMatrix> elements;
    for (std::size_t i = 0; i < n; ++i) {
        auto v = e.vectors.column(i);
        elements.emplace_back(hermitian_part(ComplexMatrix::outer(v, v)));
    }
    return Povm(std::move(elements));
}

}  // namespace ncpt::testing
