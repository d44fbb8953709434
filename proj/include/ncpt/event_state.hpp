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

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ncpt/linalg.hpp"

namespace ncpt {

/// Probability of event `e` in state `rho`: Tr[rho e].
double probability(const Projection& e, const ComplexMatrix& rho);

/// State update conditioned on event `e`: e rho e / Tr[rho e].
/// Throws OutOfDomain when Tr[rho e] <= 1e-12.
DensityState apply_operation(const Projection& e, const DensityState& rho);

/// A sequence of conditioning events.
///
/// Orientation: factors()[0] is the event conditioned on first, factors()[n-1]
/// the last. The cached product is U = E_n ... E_1 and applying the operation
/// maps rho to U rho U^H / Tr[U rho U^H]. In composition notation an operation
/// with factors {A, B} is T_B o T_A.
class Operation {
 public:
    explicit Operation(std::vector<Projection> factors);

    const std::vector<Projection>& factors() const noexcept { return factors_; }
    const ComplexMatrix& product() const noexcept { return product_; }
    std::size_t dim() const noexcept { return product_.dim(); }

 private:
    std::vector<Projection> factors_;
    ComplexMatrix product_;
};

/// Tr[U rho U^H] for the operation's product U.
double operation_weight(const Operation& op, const ComplexMatrix& rho);

DensityState compose_and_apply(const Operation& op, const DensityState& rho);

/// Reverses the factor order.
Operation involution(const Operation& op);

/// Projection Q whose certainty states {rho : Tr[rho Q] = 1} are exactly the
/// states outside the operation's domain: Q projects onto null(U).
Projection operation_orthocomplement(const Operation& op);

/// Projections commute within `tol` entrywise.
bool are_compatible(const Projection& e, const Projection& f, double tol = 1e-10);

/// Projection onto range(e) ∩ range(f), computed as null((I-e) + (I-f)).
Projection meet(const Projection& e, const Projection& f);

/// Projection onto the closed span of range(e) ∪ range(f).
Projection join(const Projection& e, const Projection& f);

/// e <= f in the lattice order (range inclusion): f e = e within tol.
bool implies(const Projection& e, const Projection& f, double tol = 1e-10);

/// Deterministic probe set used to compare operations as maps on states:
/// `random_count` full-rank states plus every rank-one basis state e_i e_i^H.
std::vector<DensityState> probe_states(std::size_t dim, std::size_t random_count = 200,
                                       std::uint64_t seed = 0x5eed);

struct OperationComparison {
    bool equal = false;
    /// Largest entrywise deviation between the two output states over probes in both domains.
    double max_deviation = 0.0;
    /// A probe lies in exactly one of the two domains.
    bool domains_differ = false;
};

/// Statistical equality of two operations as maps on states; equal iff the
/// domains agree on every probe and the outputs agree within `tol`.
OperationComparison compare_operations(const Operation& a, const Operation& b, double tol = 1e-8,
                                       std::span<const DensityState> probes = {});

/// Finite orthocomplemented family of events on C^dim.
struct EventSet {
    std::size_t dim = 0;
    std::vector<Projection> events;
    std::vector<std::string> names;

    /// Adds Θ, I and the complement of every generator (deduplicated).
    static EventSet closure(std::vector<Projection> generators, std::vector<std::string> generator_names = {});
    /// Θ and I present and closed under E -> I - E within 1e-10.
    bool is_closed() const;
    std::size_t index_of(const Projection& e, double tol = 1e-10) const;
};

// --- classical (Kolmogorov) model -------------------------------------------------

/// Event on a finite sample space, bit i set iff outcome i belongs to the event.
using EventMask = std::uint64_t;

struct ClassicalModel {
    std::size_t sample_space_size = 0;
    std::vector<EventMask> events;
    std::vector<std::vector<double>> measures;

    /// Throws InvariantViolation on malformed measures or out-of-range events.
    void validate() const;
    EventMask full_event() const;
};

double classical_probability(EventMask e, std::span<const double> mu);

/// (T_E mu)(F) = mu(E ∩ F) / mu(E), returned as a point-mass vector.
/// Throws OutOfDomain when mu(E) = 0.
std::vector<double> classical_operation(const ClassicalModel& model, EventMask e, std::span<const double> mu);

// --- axiom checks --------------------------------------------------------------

struct AxiomCheck {
    std::string axiom;
    std::string instance;
    double max_deviation = 0.0;
    bool pass = true;
};

struct AxiomReport {
    std::vector<AxiomCheck> checks;

    bool all_passed() const;
    std::size_t failures() const;
};

/// Candidate state-update map, normally apply_operation. Lets the suite be run
/// against deliberately broken maps.
using OperationMap = std::function<ComplexMatrix(const Projection&, const ComplexMatrix&)>;

OperationMap standard_operation_map();

/// Evaluates the testable operation axioms on every event (and pair of events)
/// of `events` over the sampled `states`:
///   certainty-fixed-point   certainty states are fixed points,
///   conditioning-certainty  conditioning makes the event certain,
///   orthocomplement-domain  orthocomplement of two-factor operations characterises the non-domain,
///   nested-rescaling        nested pairs rescale probabilities,
///   compatible-meet         compatible pairs reduce to the meet,
///   mixture-convexity       convex mixtures of states are states with mixed probabilities,
///   idempotence and compatibility <=> commutation of operations.
AxiomReport axiom_suite(const EventSet& events, std::span<const DensityState> states,
                        const OperationMap& op = standard_operation_map(), double tol = 1e-8);

/// Same checks for the classical model (states are the model's measures plus
/// mixtures of them); additionally every pair of operations must commute.
AxiomReport classical_axiom_suite(const ClassicalModel& model, double tol = 1e-12);

}  // namespace ncpt
