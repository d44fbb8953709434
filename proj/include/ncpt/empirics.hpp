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

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ncpt/count_table.hpp"
#include "ncpt/linalg.hpp"

namespace ncpt {

/// G(E) = (number of runs under h satisfying `event`) / (runs under h).
/// Throws EmptyTable when no run under h was recorded.
double empirical_prob(const CountTable& table, const std::function<bool(const DecisionSequence&)>& event, int h);

struct ConditionalEstimate {
    double estimate = 0.0;
    std::uint64_t n = 0;  // denominator count
};

/// Relative frequency of `target` in third position among runs under `h`
/// whose first two collected decisions are `first` then `second`.
/// Throws ZeroDenominator when no such run exists.
ConditionalEstimate ordered_conditional(const CountTable& table, Decision first, Decision second, Decision target,
                                        int h);

struct OrderEffect {
    double z = 0.0;
    bool significant = false;
};

/// Two-proportion z test with pooled variance.
OrderEffect order_effect_test(double est_a, std::uint64_t n_a, double est_b, std::uint64_t n_b,
                              double z_threshold = 3.0);

/// Per-hypothesis outcome distributions for one measurement order.
struct OrderedDistribution {
    /// Variable ids in collection order.
    std::vector<int> order;
    /// Variable prefix used in labels ("D" for observer decisions).
    std::string symbol = "D";
    std::vector<std::string> outcomes;
    std::vector<double> p0;
    std::vector<double> p1;

    /// "D2,D1,D3"
    std::string label() const;
    /// Each vector nonnegative, summing to 1 within 1e-9, same length as outcomes.
    void validate() const;
};

/// Outcome index of a decision triple read in collection order: 4*d1 + 2*d2 + d3.
/// Outcome labels are "d1,d2,d3".
std::vector<std::string> binary_outcome_labels(std::size_t length);

/// Distribution over decision tuples using only runs whose realised arrival
/// order equals `order`. Throws InsufficientData when a hypothesis has no such run.
OrderedDistribution ordered_distribution(const CountTable& table, const std::vector<int>& order);

/// The six arrival orders of three observers, listed as in the published comparison.
std::vector<std::vector<int>> standard_orders();

/// State diag(q, 1-q) and rank-one projections at angles theta_i on R^2.
struct FittedModel {
    DensityState rho;
    std::array<Projection, 3> projections;
    double q = 0.0;
    std::array<double, 3> angles{};  // radians
    /// max_i |Tr[rho E_i] - target_i|
    double residual = 0.0;
};

/// Fits a two-dimensional real model reproducing the marginal probabilities
/// P(D_i = 1) as Tr[rho E_i]. Coarse grid (q step 0.01, 1 degree) followed by
/// coordinate descent. Among grid points with equal residual the smallest
/// (q, theta_1, theta_2, theta_3) wins.
FittedModel fit_von_neumann_model(const std::array<double, 3>& targets);

}  // namespace ncpt
