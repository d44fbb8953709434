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
#include <optional>
#include <string>
#include <vector>

#include "ncpt/conic.hpp"
#include "ncpt/empirics.hpp"
#include "ncpt/linalg.hpp"

namespace ncpt {

/// Binary hypothesis testing problem over N observable outcomes.
struct DetectionProblem {
    double zeta0 = 0.5;
    double zeta1 = 0.5;
    std::vector<double> p0;
    std::vector<double> p1;

    std::size_t size() const noexcept { return p0.size(); }
    /// zeta0 + zeta1 = 1, distributions of equal length N >= 2 summing to 1
    /// within 1e-10 with nonnegative entries. Throws InvariantViolation.
    void validate() const;
};

/// Positive operator-valued measure with finitely many outcomes.
class Povm {
 public:
    static constexpr double kPsdTolerance = 1e-9;
    static constexpr double kCompletenessTolerance = 1e-8;

    Povm() = default;
    /// Throws InvariantViolation ("Povm.psd", "Povm.complete", "Povm.dimension").
    explicit Povm(std::vector<HermitianMatrix> elements, std::vector<std::string> labels = {});

    const std::vector<HermitianMatrix>& elements() const noexcept { return elements_; }
    const HermitianMatrix& operator[](std::size_t i) const { return elements_[i]; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    std::size_t size() const noexcept { return elements_.size(); }
    std::size_t dim() const noexcept { return elements_.empty() ? 0 : elements_.front().dim(); }

    /// Elements are idempotent and pairwise orthogonal within `tol`.
    bool is_pvm(double tol = 1e-9) const;
    /// Index of an element that is positive definite, if any.
    std::optional<std::size_t> positive_definite_element(double tol = 1e-12) const;

    /// The canonical PVM {e_i e_i^H} on C^n.
    static Povm canonical(std::size_t n);

 private:
    std::vector<HermitianMatrix> elements_;
    std::vector<std::string> labels_;
};

/// W1 = zeta0 rho0 weighs deciding 1 when H = 0; W0 = zeta1 rho1 weighs deciding 0 when H = 1.
struct RiskPair {
    HermitianMatrix w1;
    HermitianMatrix w0;
};

RiskPair make_risks(double zeta0, const DensityState& rho0, double zeta1, const DensityState& rho1);

struct DetectionSolution {
    HermitianMatrix pi1;
    HermitianMatrix pi0;
    /// Probability of deciding 1 for each outcome.
    std::vector<double> policy;
    double error = 0.0;
};

/// Threshold rule: decide 1 on outcome i iff zeta1 p1_i >= zeta0 p0_i.
/// Detection operators are the diagonal 0/1 matrices of the rule.
DetectionSolution classical_min_error(const DetectionProblem& prob);

struct PvmModel {
    DensityState rho0;
    DensityState rho1;
    Povm measurement;
};

/// rho_h = diag(p^h), measurement e_i e_i^H.
PvmModel build_pvm_model(const DetectionProblem& prob);

/// Optimal detector restricted to a PVM: outcome i goes to Pi1 iff
/// Tr[W1 F(i)] <= Tr[W0 F(i)]. Throws NotAPvm.
DetectionSolution solve_pvm_detection(const RiskPair& risks, const Povm& pvm);

/// Holevo optimality conditions: O = W0 Pi0 + W1 Pi1 is self-adjoint within
/// `tol`, and W0 - O, W1 - O are PSD within `tol`.
bool holevo_conditions_check(const RiskPair& risks, const ComplexMatrix& pi0, const ComplexMatrix& pi1,
                             double tol = 1e-8);

/// POVM of a sequence of measurements performed in the listed order. The
/// element for outcomes (i_1, ..., i_n) is X^H X with X = mu_n(i_n) ... mu_1(i_1),
/// i.e. mu_1(i_1) ... mu_n(i_n) ... mu_1(i_1). Outcome tuples are enumerated
/// with the first measurement varying slowest; labels are "i1,...,in", 1-based.
/// Throws DimensionMismatch.
Povm order_povm(const std::vector<Povm>& pvms);

/// (Tr[rho M(i)])_i with entries in [-1e-10, 0) clipped to 0.
std::vector<double> sequence_distribution(const ComplexMatrix& rho, const Povm& povm);

/// Optimal randomized detector built on a fixed POVM. Analytic solution:
/// beta_i = 1 iff Tr[W1 M(i)] <= Tr[W0 M(i)].
DetectionSolution solve_p5(const RiskPair& risks, const Povm& povm);

struct P6Options {
    std::size_t max_iterations = 50000;
    double move_tolerance = 1e-10;
    double accept_tolerance = 1e-6;
};

struct P6Result {
    /// Infeasibility radius of the best candidate found: the largest of the
    /// trace-constraint violations, the completeness violation and the
    /// negative part of the smallest element eigenvalue.
    double t_star = 0.0;
    /// Present when t_star <= accept_tolerance.
    std::optional<Povm> povm;
    bool converged = false;
    std::size_t iterations = 0;
};

/// Searches for a POVM M on C^k with Tr[rho_h M(i)] = p^h_i using Dykstra
/// alternating projections between the affine constraint set (least squares
/// when inconsistent) and the product of PSD cones.
P6Result solve_p6_feasibility(const DensityState& rho0, const DensityState& rho1, const DetectionProblem& prob,
                              std::size_t k, const P6Options& options = {});

struct OrderError {
    std::string order;
    double error = 0.0;
};

struct OrderErrorTable {
    std::vector<OrderError> rows;
    std::size_t best = 0;
};

/// Minimum error sum_i min(zeta0 p0_i, zeta1 p1_i) per order, in input order.
/// `best` is the first index attaining the smallest error. Throws
/// InvariantViolation on an empty list.
OrderErrorTable min_error_over_orders(const std::vector<OrderedDistribution>& dists, double zeta0, double zeta1);

// --- state existence -------------------------------------------------------

struct StateExistenceProblem {
    Povm povm;
    std::vector<double> target;
    HermitianBasis basis;
    /// Row i holds the basis coordinates of element i.
    RealMatrix a;

    StateExistenceProblem(Povm povm, std::vector<double> target);
};

enum class Verdict { Feasible, Certificate, Unknown };

std::string to_string(Verdict v);

struct StateExistenceOptions {
    std::size_t max_iterations = 50000;
    double move_tolerance = 1e-12;
    double feasible_residual = 1e-6;
    double certificate_tolerance = 1e-8;
};

struct StateExistenceResult {
    Verdict verdict = Verdict::Unknown;
    /// Feasible: a PSD matrix with Tr[rho M(i)] = P_i up to `residual`.
    std::optional<ComplexMatrix> rho;
    /// Certificate: v with sum_i v_i M(i) PSD and v . P < 0.
    std::optional<std::vector<double>> certificate;
    double residual = 0.0;
    std::string note;
};

StateExistenceResult state_exists_for_povm(const StateExistenceProblem& problem,
                                           const StateExistenceOptions& options = {});

/// Independent re-check of a dual witness.
bool verify_certificate(const StateExistenceProblem& problem, const std::vector<double>& v, double tol = 1e-8);

}  // namespace ncpt
