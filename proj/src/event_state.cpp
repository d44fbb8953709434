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

#include "ncpt/event_state.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ncpt/error.hpp"
#include "ncpt/random_matrices.hpp"
#include "ncpt/rng.hpp"

namespace ncpt {

namespace {

constexpr double kDomainFloor = 1e-12;

ComplexMatrix conjugate_by(const ComplexMatrix& u, const ComplexMatrix& rho) { return u * rho * u.adjoint(); }

}  // namespace

double probability(const Projection& e, const ComplexMatrix& rho) { return trace_of_product(rho, e).real(); }

DensityState apply_operation(const Projection& e, const DensityState& rho) {
    double p = probability(e, rho);
    if (p <= kDomainFloor) {
        throw OutOfDomain("apply_operation: Tr[rho E] = " + std::to_string(p));
    }
    ComplexMatrix out = e.matrix() * rho.matrix() * e.matrix();
    out *= 1.0 / p;
    return DensityState::assume_valid(out);
}

Operation::Operation(std::vector<Projection> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) {
        throw InvariantViolation("Operation.nonempty", "an operation needs at least one factor");
    }
    product_ = factors_.front().matrix();
    for (std::size_t k = 1; k < factors_.size(); ++k) {
        if (factors_[k].dim() != product_.dim()) {
            throw DimensionMismatch("Operation: factor dimensions differ");
        }
        product_ = factors_[k].matrix() * product_;
    }
}

double operation_weight(const Operation& op, const ComplexMatrix& rho) {
    const ComplexMatrix& u = op.product();
    return trace_of_product(u.adjoint() * u, rho).real();
}

DensityState compose_and_apply(const Operation& op, const DensityState& rho) {
    if (op.dim() != rho.dim()) {
        throw DimensionMismatch("compose_and_apply: operation and state dimensions differ");
    }
    double w = operation_weight(op, rho);
    if (w <= kDomainFloor) {
        throw OutOfDomain("compose_and_apply: Tr[U rho U^H] = " + std::to_string(w));
    }
    ComplexMatrix out = conjugate_by(op.product(), rho);
    out *= 1.0 / w;
    return DensityState::assume_valid(out);
}

Operation involution(const Operation& op) {
    std::vector<Projection> reversed(op.factors().rbegin(), op.factors().rend());
    return Operation(std::move(reversed));
}

Projection operation_orthocomplement(const Operation& op) { return projection_onto_nullspace(op.product()); }

bool are_compatible(const Projection& e, const Projection& f, double tol) {
    return max_abs_diff(e.matrix() * f.matrix(), f.matrix() * e.matrix()) <= tol;
}

Projection meet(const Projection& e, const Projection& f) {
    if (e.dim() != f.dim()) {
        throw DimensionMismatch("meet: dimensions differ");
    }
    return projection_onto_nullspace(e.complement().matrix() + f.complement().matrix());
}

Projection join(const Projection& e, const Projection& f) { return meet(e.complement(), f.complement()).complement(); }

bool implies(const Projection& e, const Projection& f, double tol) {
    return max_abs_diff(f.matrix() * e.matrix(), e.matrix()) <= tol;
}

std::vector<DensityState> probe_states(std::size_t dim, std::size_t random_count, std::uint64_t seed) {
    std::vector<DensityState> out;
    out.reserve(random_count + dim);
    PhiloxStream rng(seed, dim, 0);
    for (std::size_t k = 0; k < random_count; ++k) {
        out.push_back(random_density_state(dim, rng));
    }
    for (std::size_t i = 0; i < dim; ++i) {
        ComplexMatrix basis(dim);
        basis(i, i) = 1.0;
        out.push_back(DensityState::assume_valid(basis));
    }
    return out;
}

OperationComparison compare_operations(const Operation& a, const Operation& b, double tol,
                                       std::span<const DensityState> probes) {
    if (a.dim() != b.dim()) {
        throw DimensionMismatch("compare_operations: dimensions differ");
    }
    std::vector<DensityState> owned;
    if (probes.empty()) {
        owned = probe_states(a.dim());
        probes = owned;
    }
    OperationComparison cmp;
    for (const auto& rho : probes) {
        bool in_a = operation_weight(a, rho) > kDomainFloor;
        bool in_b = operation_weight(b, rho) > kDomainFloor;
        if (in_a != in_b) {
            cmp.domains_differ = true;
            continue;
        }
        if (in_a) {
            double dev = max_abs_diff(compose_and_apply(a, rho), compose_and_apply(b, rho));
            cmp.max_deviation = std::max(cmp.max_deviation, dev);
        }
    }
    cmp.equal = !cmp.domains_differ && cmp.max_deviation <= tol;
    return cmp;
}

EventSet EventSet::closure(std::vector<Projection> generators, std::vector<std::string> generator_names) {
    if (generators.empty()) {
        throw InvariantViolation("EventSet.nonempty", "no generators");
    }
    EventSet set;
    set.dim = generators.front().dim();
    auto add = [&set](const Projection& p, std::string name) {
        if (p.dim() != set.dim) {
            throw DimensionMismatch("EventSet: generator dimensions differ");
        }
        if (set.index_of(p) == set.events.size()) {
            set.events.push_back(p);
            set.names.push_back(std::move(name));
        }
    };
    add(Projection::zero(set.dim), "0");
    add(Projection::identity(set.dim), "I");
    for (std::size_t k = 0; k < generators.size(); ++k) {
        std::string name = k < generator_names.size() ? generator_names[k] : "E" + std::to_string(k + 1);
        add(generators[k], name);
        add(generators[k].complement(), name + "'");
    }
    return set;
}

std::size_t EventSet::index_of(const Projection& e, double tol) const {
    for (std::size_t k = 0; k < events.size(); ++k) {
        if (max_abs_diff(events[k], e) <= tol) {
            return k;
        }
    }
    return events.size();
}

bool EventSet::is_closed() const {
    if (index_of(Projection::zero(dim)) == events.size() || index_of(Projection::identity(dim)) == events.size()) {
        return false;
    }
    return std::all_of(events.begin(), events.end(),
                       [this](const Projection& e) { return index_of(e.complement()) != events.size(); });
}

void ClassicalModel::validate() const {
    if (sample_space_size == 0 || sample_space_size > 64) {
        throw InvariantViolation("ClassicalModel.size", "sample space size must be in [1, 64]");
    }
    for (EventMask e : events) {
        if ((e & ~full_event()) != 0) {
            throw InvariantViolation("ClassicalModel.event", "event has bits outside the sample space");
        }
    }
    for (const auto& mu : measures) {
        if (mu.size() != sample_space_size) {
            throw InvariantViolation("ClassicalModel.measure", "measure length differs from sample space size");
        }
        double sum = 0.0;
        for (double x : mu) {
            if (!(x >= 0.0)) {
                throw InvariantViolation("ClassicalModel.measure", "negative or NaN mass");
            }
            sum += x;
        }
        if (std::abs(sum - 1.0) > 1e-12) {
            throw InvariantViolation("ClassicalModel.measure", "mass sums to " + std::to_string(sum));
        }
    }
}

EventMask ClassicalModel::full_event() const {
    return sample_space_size >= 64 ? ~EventMask{0} : (EventMask{1} << sample_space_size) - 1;
}

double classical_probability(EventMask e, std::span<const double> mu) {
    double p = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        if ((e >> i) & 1U) {
            p += mu[i];
        }
    }
    return p;
}

std::vector<double> classical_operation(const ClassicalModel& model, EventMask e, std::span<const double> mu) {
    if (mu.size() != model.sample_space_size) {
        throw DimensionMismatch("classical_operation: measure length differs from sample space size");
    }
    double pe = classical_probability(e, mu);
    if (pe <= 0.0) {
        throw OutOfDomain("classical_operation: mu(E) = 0");
    }
    std::vector<double> out(mu.size(), 0.0);
    for (std::size_t i = 0; i < mu.size(); ++i) {
        if ((e >> i) & 1U) {
            out[i] = mu[i] / pe;
        }
    }
    return out;
}

bool AxiomReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const AxiomCheck& c) { return c.pass; });
}

std::size_t AxiomReport::failures() const {
    return static_cast<std::size_t>(
        std::count_if(checks.begin(), checks.end(), [](const AxiomCheck& c) { return !c.pass; }));
}

OperationMap standard_operation_map() {
    return [](const Projection& e, const ComplexMatrix& rho) -> ComplexMatrix {
        return apply_operation(e, DensityState::assume_valid(rho)).matrix();
    };
}

namespace {

// Accumulates the worst deviation of one axiom instance; exceptions thrown by
// the candidate map count as failures.
class CheckBuilder {
 public:
    CheckBuilder(std::string axiom, std::string instance, double tol)
        : check_{std::move(axiom), std::move(instance), 0.0, true}, tol_(tol) {}

    void observe(double deviation) {
        if (!(deviation <= check_.max_deviation)) {
            check_.max_deviation = std::isnan(deviation) ? INFINITY : deviation;
        }
    }
    void fail(const std::string& why) {
        forced_failure_ = true;
        check_.instance += " [" + why + "]";
    }
    AxiomCheck finish() {
        check_.pass = !forced_failure_ && check_.max_deviation <= tol_;
        return check_;
    }

 private:
    AxiomCheck check_;
    double tol_;
    bool forced_failure_ = false;
};

template <class F>
void guarded(CheckBuilder& b, F&& body) {
    try {
        body();
    } catch (const std::exception& ex) {
        b.fail(ex.what());
    }
}

}  // namespace

AxiomReport axiom_suite(const EventSet& events, std::span<const DensityState> states, const OperationMap& op,
                        double tol) {
    AxiomReport report;
    const auto& ev = events.events;
    const auto& names = events.names;
    auto name_of = [&](std::size_t k) { return k < names.size() ? names[k] : "E#" + std::to_string(k); };

    for (std::size_t k = 0; k < ev.size(); ++k) {
        const Projection& e = ev[k];
        if (e.rank() == 0) {
            continue;
        }
        CheckBuilder fixed("certainty-fixed-point", "E=" + name_of(k), tol);
        CheckBuilder certain("conditioning-certainty", "E=" + name_of(k), tol);
        CheckBuilder idem("idempotence", "E=" + name_of(k), tol);
        for (const auto& rho : states) {
            double p = probability(e, rho);
            if (p <= kDomainFloor) {
                continue;
            }
            guarded(certain, [&] {
                ComplexMatrix out = op(e, rho);
                certain.observe(std::abs(trace_of_product(out, e).real() - 1.0));
            });
            guarded(fixed, [&] {
                ComplexMatrix conditioned = e.matrix() * rho.matrix() * e.matrix();
                conditioned *= 1.0 / p;
                fixed.observe(max_abs_diff(op(e, conditioned), conditioned));
            });
            guarded(idem, [&] {
                ComplexMatrix once = op(e, rho);
                idem.observe(max_abs_diff(op(e, once), once));
            });
        }
        report.checks.push_back(fixed.finish());
        report.checks.push_back(certain.finish());
        report.checks.push_back(idem.finish());
    }

    for (std::size_t a = 0; a < ev.size(); ++a) {
        for (std::size_t b = 0; b < ev.size(); ++b) {
            if (a == b || ev[a].rank() == 0 || ev[b].rank() == 0) {
                continue;
            }
            const Projection& e1 = ev[a];
            const Projection& e2 = ev[b];
            std::string pair = "E1=" + name_of(a) + ",E2=" + name_of(b);
            bool compatible = are_compatible(e1, e2);

            if (implies(e2, e1)) {
                CheckBuilder nested("nested-rescaling", pair, tol);
                for (const auto& rho : states) {
                    double p1 = probability(e1, rho);
                    if (p1 <= kDomainFloor) {
                        continue;
                    }
                    guarded(nested, [&] {
                        double lhs = trace_of_product(op(e1, rho), e2).real();
                        nested.observe(std::abs(lhs - probability(e2, rho) / p1));
                    });
                }
                report.checks.push_back(nested.finish());
            }
            if (compatible) {
                CheckBuilder meet_check("compatible-meet", pair, tol);
                Projection both = meet(e1, e2);
                for (const auto& rho : states) {
                    if (probability(e1, rho) <= kDomainFloor) {
                        continue;
                    }
                    guarded(meet_check, [&] {
                        ComplexMatrix out = op(e1, rho);
                        meet_check.observe(std::abs(trace_of_product(out, e2).real() - trace_of_product(out, both).real()));
                    });
                }
                report.checks.push_back(meet_check.finish());
            }

            if (a < b) {
                Operation forward({e1, e2});
                Operation backward({e2, e1});

                CheckBuilder ortho("orthocomplement-domain", pair, tol);
                Projection q = operation_orthocomplement(forward);
                for (const auto& rho : states) {
                    bool outside = operation_weight(forward, rho) <= kDomainFloor;
                    bool sure = std::abs(probability(q, rho) - 1.0) <= tol;
                    if (outside != sure) {
                        ortho.fail("domain/certainty mismatch");
                        break;
                    }
                    ComplexMatrix qrq = q.matrix() * rho.matrix() * q.matrix();
                    double w = qrq.trace().real();
                    if (w > kDomainFloor) {
                        qrq *= 1.0 / w;
                        ortho.observe(operation_weight(forward, qrq));
                    }
                }
                report.checks.push_back(ortho.finish());

                CheckBuilder commute("compatibility-commutation", pair, tol);
                OperationComparison cmp = compare_operations(forward, backward, tol, states);
                commute.observe(compatible ? cmp.max_deviation : 0.0);
                if (cmp.equal != compatible) {
                    commute.fail(compatible ? "compatible but operations differ" : "incompatible but operations agree");
                }
                report.checks.push_back(commute.finish());
            }
        }
    }

    CheckBuilder mixture("mixture-convexity", "mixtures t=0.3 of consecutive states", tol);
    for (std::size_t k = 0; k + 1 < states.size(); ++k) {
        ComplexMatrix mix = states[k].matrix() * 0.3 + states[k + 1].matrix() * 0.7;
        mixture.observe(std::abs(mix.trace().real() - 1.0));
        mixture.observe(std::max(0.0, -min_eigenvalue(mix)));
        for (const auto& e : ev) {
            double expected = 0.3 * probability(e, states[k]) + 0.7 * probability(e, states[k + 1]);
            mixture.observe(std::abs(probability(e, mix) - expected));
        }
    }
    report.checks.push_back(mixture.finish());
    return report;
}

AxiomReport classical_axiom_suite(const ClassicalModel& model, double tol) {
    model.validate();
    AxiomReport report;
    std::vector<EventMask> events = model.events;
    if (std::find(events.begin(), events.end(), model.full_event()) == events.end()) {
        events.push_back(model.full_event());
    }
    std::vector<std::vector<double>> states = model.measures;
    for (std::size_t k = 0; k + 1 < model.measures.size(); ++k) {
        std::vector<double> mix(model.sample_space_size);
        for (std::size_t i = 0; i < mix.size(); ++i) {
            mix[i] = 0.3 * model.measures[k][i] + 0.7 * model.measures[k + 1][i];
        }
        states.push_back(std::move(mix));
    }
    auto label = [](EventMask e) { return "{" + std::to_string(e) + "}"; };
    auto max_diff = [](const std::vector<double>& x, const std::vector<double>& y) {
        double d = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            d = std::max(d, std::abs(x[i] - y[i]));
        }
        return d;
    };

    for (EventMask e : events) {
        if (e == 0) {
            continue;
        }
        CheckBuilder fixed("certainty-fixed-point", "E=" + label(e), tol);
        CheckBuilder certain("conditioning-certainty", "E=" + label(e), tol);
        for (const auto& mu : states) {
            if (classical_probability(e, mu) <= 0.0) {
                continue;
            }
            auto conditioned = classical_operation(model, e, mu);
            certain.observe(std::abs(classical_probability(e, conditioned) - 1.0));
            fixed.observe(max_diff(classical_operation(model, e, conditioned), conditioned));
        }
        report.checks.push_back(fixed.finish());
        report.checks.push_back(certain.finish());
    }
    for (EventMask e1 : events) {
        for (EventMask e2 : events) {
            if (e1 == 0 || e2 == 0 || e1 == e2) {
                continue;
            }
            std::string pair = "E1=" + label(e1) + ",E2=" + label(e2);
            CheckBuilder meet_check("compatible-meet", pair, tol);
            CheckBuilder nested("nested-rescaling", pair, tol);
            CheckBuilder commute("commutation", pair, tol);
            bool is_nested = (e2 & ~e1) == 0;
            for (const auto& mu : states) {
                double p1 = classical_probability(e1, mu);
                if (p1 <= 0.0) {
                    continue;
                }
                auto after = classical_operation(model, e1, mu);
                meet_check.observe(std::abs(classical_probability(e2, after) - classical_probability(e1 & e2, after)));
                if (is_nested) {
                    nested.observe(std::abs(classical_probability(e2, after) - classical_probability(e2, mu) / p1));
                }
                if (classical_probability(e1 & e2, mu) > 0.0) {
                    auto ab = classical_operation(model, e2, after);
                    auto ba = classical_operation(model, e1, classical_operation(model, e2, mu));
                    commute.observe(max_diff(ab, ba));
                }
            }
            report.checks.push_back(meet_check.finish());
            if (is_nested) {
                report.checks.push_back(nested.finish());
            }
            report.checks.push_back(commute.finish());
        }
    }
    return report;
}

}  // namespace ncpt
