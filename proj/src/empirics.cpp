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

#include "ncpt/empirics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ncpt/error.hpp"

namespace ncpt {

double empirical_prob(const CountTable& table, const std::function<bool(const DecisionSequence&)>& event, int h) {
    std::uint64_t total = table.total(h);
    if (total == 0) {
        throw EmptyTable("empirical_prob: no runs recorded under h=" + std::to_string(h));
    }
    std::uint64_t hits = 0;
    for (const auto& [seq, n] : table.counts(h)) {
        if (event(seq)) {
            hits += n;
        }
    }
    return static_cast<double>(hits) / static_cast<double>(total);
}

ConditionalEstimate ordered_conditional(const CountTable& table, Decision first, Decision second, Decision target,
                                        int h) {
    std::uint64_t num = 0;
    std::uint64_t den = 0;
    for (const auto& [seq, n] : table.counts(h)) {
        if (seq.size() < 3 || seq[0] != first || seq[1] != second) {
            continue;
        }
        den += n;
        if (seq[2] == target) {
            num += n;
        }
    }
    if (den == 0) {
        throw ZeroDenominator("ordered_conditional: no run under h=" + std::to_string(h) + " starts with " +
                              sequence_key({first, second}));
    }
    return {static_cast<double>(num) / static_cast<double>(den), den};
}

OrderEffect order_effect_test(double est_a, std::uint64_t n_a, double est_b, std::uint64_t n_b, double z_threshold) {
    double na = static_cast<double>(n_a);
    double nb = static_cast<double>(n_b);
    double pooled = (est_a * na + est_b * nb) / (na + nb);
    double var = pooled * (1.0 - pooled) * (1.0 / na + 1.0 / nb);
    double diff = est_a - est_b;
    OrderEffect out;
    if (diff == 0.0) {
        out.z = 0.0;
    } else if (var <= 0.0) {
        out.z = diff > 0 ? INFINITY : -INFINITY;
    } else {
        out.z = diff / std::sqrt(var);
    }
    out.significant = std::abs(out.z) >= z_threshold;
    return out;
}

std::string OrderedDistribution::label() const {
    std::string out;
    for (std::size_t k = 0; k < order.size(); ++k) {
        if (k > 0) {
            out += ',';
        }
        out += symbol + std::to_string(order[k]);
    }
    return out;
}

void OrderedDistribution::validate() const {
    if (p0.size() != outcomes.size() || p1.size() != outcomes.size() || outcomes.empty()) {
        throw InvariantViolation("OrderedDistribution.shape", "outcome labels and probability vectors differ in size");
    }
    for (const auto* p : {&p0, &p1}) {
        double sum = 0.0;
        for (double x : *p) {
            if (!(x >= 0.0)) {
                throw InvariantViolation("OrderedDistribution.nonnegative", "negative probability in " + label());
            }
            sum += x;
        }
        if (std::abs(sum - 1.0) > 1e-9) {
            throw InvariantViolation("OrderedDistribution.normalized", label() + " sums to " + std::to_string(sum));
        }
    }
}

std::vector<std::string> binary_outcome_labels(std::size_t length) {
    std::vector<std::string> out;
    for (std::size_t idx = 0; idx < (std::size_t{1} << length); ++idx) {
        std::string s;
        for (std::size_t k = 0; k < length; ++k) {
            if (k > 0) {
                s += ',';
            }
            s += ((idx >> (length - 1 - k)) & 1U) ? '1' : '0';
        }
        out.push_back(std::move(s));
    }
    return out;
}

OrderedDistribution ordered_distribution(const CountTable& table, const std::vector<int>& order) {
    OrderedDistribution dist;
    dist.order = order;
    dist.outcomes = binary_outcome_labels(order.size());
    const std::size_t cells = dist.outcomes.size();
    for (int h = 0; h < 2; ++h) {
        std::vector<double> counts(cells, 0.0);
        double total = 0.0;
        for (const auto& [seq, n] : table.counts(h)) {
            if (seq.size() != order.size()) {
                continue;
            }
            bool match = true;
            std::size_t idx = 0;
            for (std::size_t k = 0; k < order.size(); ++k) {
                if (seq[k].observer != order[k]) {
                    match = false;
                    break;
                }
                idx = (idx << 1) | static_cast<std::size_t>(seq[k].value);
            }
            if (match) {
                counts[idx] += static_cast<double>(n);
                total += static_cast<double>(n);
            }
        }
        if (total == 0.0) {
            throw InsufficientData("ordered_distribution: no run under h=" + std::to_string(h) + " arrived in order " +
                                   dist.label());
        }
        for (auto& c : counts) {
            c /= total;
        }
        (h == 0 ? dist.p0 : dist.p1) = std::move(counts);
    }
    return dist;
}

std::vector<std::vector<int>> standard_orders() {
    return {{2, 1, 3}, {1, 2, 3}, {3, 1, 2}, {1, 3, 2}, {2, 3, 1}, {3, 2, 1}};
}

namespace {

double model_probability(double q, double angle) {
    double c = std::cos(angle);
    double s = std::sin(angle);
    return q * c * c + (1.0 - q) * s * s;
}

struct FitParams {
    double q;
    std::array<double, 3> angles;
};

double max_residual(const FitParams& x, const std::array<double, 3>& targets) {
    double r = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        r = std::max(r, std::abs(model_probability(x.q, x.angles[i]) - targets[i]));
    }
    return r;
}

double squared_residual(const FitParams& x, const std::array<double, 3>& targets) {
    double s = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        double d = model_probability(x.q, x.angles[i]) - targets[i];
        s += d * d;
    }
    return s;
}

}  // namespace

FittedModel fit_von_neumann_model(const std::array<double, 3>& targets) {
    constexpr double kDegree = std::numbers::pi / 180.0;
    FitParams best{0.0, {0.0, 0.0, 0.0}};
    double best_residual = INFINITY;
    for (int qi = 0; qi <= 100; ++qi) {
        FitParams cand{qi * 0.01, {}};
        for (std::size_t i = 0; i < 3; ++i) {
            double err = INFINITY;
            for (int deg = 0; deg < 180; ++deg) {
                double e = std::abs(model_probability(cand.q, deg * kDegree) - targets[i]);
                if (e < err) {
                    err = e;
                    cand.angles[i] = deg * kDegree;
                }
            }
        }
        double r = max_residual(cand, targets);
        if (r < best_residual) {
            best_residual = r;
            best = cand;
        }
    }

    // Coordinate descent on the squared residual (separable in the angles).
    double steps[4] = {0.01, kDegree, kDegree, kDegree};
    double value = squared_residual(best, targets);
    auto coord = [&best](int k) -> double& { return k == 0 ? best.q : best.angles[static_cast<std::size_t>(k - 1)]; };
    for (int pass = 0; pass < 20000 && value > 1e-32 && steps[0] > 1e-15; ++pass) {
        bool improved = false;
        for (int k = 0; k < 4; ++k) {
            for (double sign : {1.0, -1.0}) {
                double saved = coord(k);
                double trial = saved + sign * steps[k];
                if (k == 0) {
                    trial = std::clamp(trial, 0.0, 1.0);
                }
                coord(k) = trial;
                double v = squared_residual(best, targets);
                if (v < value) {
                    value = v;
                    improved = true;
                    break;
                }
                coord(k) = saved;
            }
        }
        if (!improved) {
            for (double& s : steps) {
                s *= 0.5;
            }
        }
    }

    FittedModel model;
    model.q = best.q;
    model.angles = best.angles;
    std::vector<double> diag{best.q, 1.0 - best.q};
    model.rho = DensityState(ComplexMatrix::diagonal(diag));
    for (std::size_t i = 0; i < 3; ++i) {
        model.projections[i] = Projection::at_angle(best.angles[i]);
    }
    double r = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        r = std::max(r, std::abs(trace_of_product(model.rho, model.projections[i]).real() - targets[i]));
    }
    model.residual = r;
    return model;
}

}  // namespace ncpt
