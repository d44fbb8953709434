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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "fixtures.hpp"
#include "ncpt/detection.hpp"
#include "ncpt/error.hpp"
#include "ncpt/event_state.hpp"
#include "oracles.hpp"

namespace ncpt {
namespace {

const std::vector<double> kLeftP0{0.1, 0.2, 0.2, 0.15, 0.25, 0.1};
const std::vector<double> kLeftP1{0.15, 0.3, 0.15, 0.25, 0.1, 0.05};
const std::vector<double> kRightP0{0.25, 0.05, 0.25, 0.1, 0.05, 0.3};
const std::vector<double> kRightP1{0.15, 0.30, 0.13, 0.27, 0.12, 0.03};

double min_sum(const DetectionProblem& p) {
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        s += std::min(p.zeta0 * p.p0[i], p.zeta1 * p.p1[i]);
    }
    return s;
}

void expect_valid_solution(const DetectionSolution& sol, double zeta0, double zeta1) {
    const std::size_t k = sol.pi1.dim();
    EXPECT_LT(max_abs_diff(sol.pi1.matrix() + sol.pi0.matrix(), ComplexMatrix::identity(k)), 1e-8);
    EXPECT_TRUE(is_psd(sol.pi1.matrix(), 1e-9));
    EXPECT_TRUE(is_psd(sol.pi0.matrix(), 1e-9));
    EXPECT_GE(sol.error, -1e-12);
    EXPECT_LE(sol.error, std::min(zeta0, zeta1) + 1e-9);
}

TEST(DetectionProblem, Validation) {
    EXPECT_NO_THROW((DetectionProblem{0.4, 0.6, kLeftP0, kLeftP1}.validate()));
    EXPECT_THROW((DetectionProblem{0.4, 0.5, kLeftP0, kLeftP1}.validate()), InvariantViolation);
    EXPECT_THROW((DetectionProblem{0.5, 0.5, {1.0}, {1.0}}.validate()), InvariantViolation);
    EXPECT_THROW((DetectionProblem{0.5, 0.5, {0.5, 0.6}, {0.5, 0.5}}.validate()), InvariantViolation);
    EXPECT_THROW((DetectionProblem{0.5, 0.5, {0.5, 0.5}, {0.2, 0.3, 0.5}}.validate()), InvariantViolation);
}

TEST(ClassicalMinError, TwoOrderExampleValues) {
    DetectionProblem left{0.4, 0.6, kLeftP0, kLeftP1};
    DetectionProblem right{0.4, 0.6, kRightP0, kRightP1};
    EXPECT_NEAR(classical_min_error(left).error, 0.35, 1e-9);
    EXPECT_NEAR(classical_min_error(right).error, 0.266, 1e-9);
}

TEST(ClassicalMinError, IndistinguishableHypotheses) {
    DetectionProblem p{0.3, 0.7, {0.2, 0.8}, {0.2, 0.8}};
    EXPECT_NEAR(classical_min_error(p).error, 0.3, 1e-15);
}

TEST(ClassicalMinError, TiesDecideOne) {
    DetectionProblem p{0.5, 0.5, {0.5, 0.5}, {0.5, 0.5}};
    auto sol = classical_min_error(p);
    EXPECT_EQ(sol.policy, (std::vector<double>{1.0, 1.0}));
}

TEST(ClassicalMinError, MatchesBruteForceEnumeration) {
    PhiloxStream rng(31, 0, 0);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t n = 2 + trial % 9;
        double z0 = rng.uniform();
        DetectionProblem p{z0, 1.0 - z0, testing::random_distribution(n, rng), testing::random_distribution(n, rng)};
        auto sol = classical_min_error(p);
        EXPECT_NEAR(sol.error, testing::brute_force_min_error(p.zeta0, p.zeta1, p.p0, p.p1), 1e-12);
        expect_valid_solution(sol, p.zeta0, p.zeta1);
    }
}

TEST(BuildPvmModel, ReproducesDistributions) {
    DetectionProblem p{0.4, 0.6, kLeftP0, kLeftP1};
    PvmModel m = build_pvm_model(p);
    EXPECT_TRUE(m.measurement.is_pvm());
    EXPECT_NEAR(trace_of_product(m.rho0.matrix(), m.measurement[2].matrix()).real(), 0.2, 1e-15);
    auto d0 = sequence_distribution(m.rho0.matrix(), m.measurement);
    auto d1 = sequence_distribution(m.rho1.matrix(), m.measurement);
    for (std::size_t i = 0; i < p.size(); ++i) {
        EXPECT_EQ(d0[i], p.p0[i]);
        EXPECT_EQ(d1[i], p.p1[i]);
    }
    DetectionProblem point{0.5, 0.5, {1.0, 0.0}, {0.0, 1.0}};
    EXPECT_EQ(build_pvm_model(point).rho0.matrix(), ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, 0.0}}));
}

TEST(SolvePvmDetection, TwoOrderExampleAndHolevo) {
    for (const auto& [p0, p1, expected] :
         {std::tuple{kLeftP0, kLeftP1, 0.35}, std::tuple{kRightP0, kRightP1, 0.266}}) {
        DetectionProblem p{0.4, 0.6, p0, p1};
        PvmModel m = build_pvm_model(p);
        RiskPair risks = make_risks(p.zeta0, m.rho0, p.zeta1, m.rho1);
        auto sol = solve_pvm_detection(risks, m.measurement);
        EXPECT_NEAR(sol.error, expected, 1e-9);
        EXPECT_TRUE(holevo_conditions_check(risks, sol.pi0.matrix(), sol.pi1.matrix()));
        for (double b : sol.policy) {
            EXPECT_TRUE(b == 0.0 || b == 1.0);
        }
    }
}

TEST(SolvePvmDetection, CertainHypothesisNeverDecidesOne) {
    DetectionProblem p{1.0, 0.0, {0.3, 0.7}, {0.6, 0.4}};
    PvmModel m = build_pvm_model(p);
    auto sol = solve_pvm_detection(make_risks(1.0, m.rho0, 0.0, m.rho1), m.measurement);
    EXPECT_EQ(sol.pi1.matrix(), ComplexMatrix::zero(2));
    EXPECT_EQ(sol.error, 0.0);
}

TEST(SolvePvmDetection, RandomProblemsAgreeWithClassicalAndBruteForce) {
    PhiloxStream rng(32, 0, 0);
    for (int trial = 0; trial < 30; ++trial) {
        double z0 = rng.uniform();
        DetectionProblem p{z0, 1.0 - z0, testing::random_distribution(4, rng), testing::random_distribution(4, rng)};
        PvmModel m = build_pvm_model(p);
        RiskPair risks = make_risks(p.zeta0, m.rho0, p.zeta1, m.rho1);
        auto sol = solve_pvm_detection(risks, m.measurement);
        EXPECT_NEAR(sol.error, classical_min_error(p).error, 1e-12);
        EXPECT_NEAR(sol.error, testing::brute_force_min_error(p.zeta0, p.zeta1, p.p0, p.p1), 1e-12);
        EXPECT_TRUE(holevo_conditions_check(risks, sol.pi0.matrix(), sol.pi1.matrix()));
        expect_valid_solution(sol, p.zeta0, p.zeta1);
    }
}

TEST(SolvePvmDetection, RejectsNonProjectiveMeasurement) {
    PhiloxStream rng(33, 0, 0);
    Povm povm = testing::random_povm(3, 2, rng);
    DensityState rho = DensityState::maximally_mixed(2);
    EXPECT_THROW(solve_pvm_detection(make_risks(0.5, rho, 0.5, rho), povm), NotAPvm);
}

TEST(HolevoConditions, SwappedPolicyFails) {
    DetectionProblem p{0.5, 0.5, {0.8, 0.2}, {0.3, 0.7}};
    PvmModel m = build_pvm_model(p);
    RiskPair risks = make_risks(p.zeta0, m.rho0, p.zeta1, m.rho1);
    auto sol = solve_pvm_detection(risks, m.measurement);
    EXPECT_TRUE(holevo_conditions_check(risks, sol.pi0.matrix(), sol.pi1.matrix()));
    EXPECT_FALSE(holevo_conditions_check(risks, sol.pi1.matrix(), sol.pi0.matrix()));
}

TEST(HolevoConditions, EqualRisksAcceptAnyPair) {
    PhiloxStream rng(34, 0, 0);
    DensityState rho = random_density_state(3, rng);
    RiskPair risks = make_risks(0.5, rho, 0.5, rho);
    Povm two = testing::random_povm(2, 3, rng);
    EXPECT_TRUE(holevo_conditions_check(risks, two[0].matrix(), two[1].matrix()));
}

TEST(OrderPovm, CommutingFactorsGiveProjections) {
    Povm a(std::vector<HermitianMatrix>{HermitianMatrix(ComplexMatrix::diagonal(std::vector<double>{1, 1, 0})),
                                        HermitianMatrix(ComplexMatrix::diagonal(std::vector<double>{0, 0, 1}))});
    Povm b = Povm::canonical(3);
    Povm seq = order_povm({a, b});
    ASSERT_EQ(seq.size(), 6U);
    EXPECT_EQ(seq.labels()[1], "1,2");
    for (const auto& e : seq.elements()) {
        EXPECT_LT(max_abs_diff(e.matrix() * e.matrix(), e.matrix()), 1e-9);
    }
}

TEST(OrderPovm, CompleteAndNotIdempotentForNonCommutingPair) {
    auto line = [](double t) { return HermitianMatrix(Projection::at_angle(t).matrix()); };
    auto perp = [](double t) { return HermitianMatrix(Projection::at_angle(t).complement().matrix()); };
    Povm mu(std::vector<HermitianMatrix>{line(0.0), perp(0.0)});
    Povm nu(std::vector<HermitianMatrix>{line(M_PI / 4), perp(M_PI / 4)});
    Povm seq = order_povm({mu, nu});
    // mu(1) nu(1) mu(1) = diag(1/2, 0) by hand.
    EXPECT_LT(max_abs_diff(seq[0].matrix(), ComplexMatrix::from_rows({{0.5, 0.0}, {0.0, 0.0}})), 1e-15);
    EXPECT_GT(max_abs_diff(seq[0].matrix() * seq[0].matrix(), seq[0].matrix()), 0.2);
}

TEST(OrderPovm, MatchesSequentialStateUpdates) {
    PhiloxStream rng(35, 0, 0);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Povm> pvms{testing::random_basis_pvm(3, rng), testing::random_basis_pvm(3, rng),
                               testing::random_basis_pvm(3, rng)};
        Povm seq = order_povm(pvms);
        DensityState rho = random_density_state(3, rng);
        auto dist = sequence_distribution(rho.matrix(), seq);
        EXPECT_NEAR(std::accumulate(dist.begin(), dist.end(), 0.0), 1.0, 1e-9);
        std::size_t idx = 0;
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = 0; j < 3; ++j) {
                for (std::size_t l = 0; l < 3; ++l, ++idx) {
                    Projection a(pvms[0][i].matrix(), 1e-9);
                    Projection b(pvms[1][j].matrix(), 1e-9);
                    Projection c(pvms[2][l].matrix(), 1e-9);
                    double pa = probability(a, rho);
                    DensityState ra = apply_operation(a, rho);
                    double pb = probability(b, ra);
                    DensityState rb = apply_operation(b, ra);
                    EXPECT_NEAR(dist[idx], pa * pb * probability(c, rb), 1e-10);
                }
            }
        }
    }
}

TEST(OrderPovm, DimensionMismatchThrows) {
    EXPECT_THROW(order_povm({Povm::canonical(2), Povm::canonical(3)}), DimensionMismatch);
}

TEST(SequenceDistribution, MaximallyMixedState) {
    PhiloxStream rng(36, 0, 0);
    Povm povm = testing::random_povm(5, 3, rng);
    auto d = sequence_distribution(DensityState::maximally_mixed(3).matrix(), povm);
    for (std::size_t i = 0; i < povm.size(); ++i) {
        EXPECT_NEAR(d[i], povm[i].matrix().trace().real() / 3.0, 1e-14);
    }
}

TEST(Povm, ValidatesInvariants) {
    EXPECT_THROW(Povm(std::vector<HermitianMatrix>{HermitianMatrix(ComplexMatrix::identity(2) * 0.5)}),
                 InvariantViolation);
    std::vector<HermitianMatrix> negative{HermitianMatrix(ComplexMatrix::diagonal(std::vector<double>{1.5, 1.0})),
                                          HermitianMatrix(ComplexMatrix::diagonal(std::vector<double>{-0.5, 0.0}))};
    try {
        Povm p(negative);
        FAIL() << "expected InvariantViolation";
    } catch (const InvariantViolation& e) {
        EXPECT_EQ(e.invariant(), "Povm.psd");
    }
}

TEST(SolveP5, CanonicalPvmReducesToPvmSolution) {
    DetectionProblem p{0.4, 0.6, kLeftP0, kLeftP1};
    PvmModel m = build_pvm_model(p);
    RiskPair risks = make_risks(p.zeta0, m.rho0, p.zeta1, m.rho1);
    EXPECT_NEAR(solve_p5(risks, m.measurement).error, solve_pvm_detection(risks, m.measurement).error, 1e-15);
}

TEST(SolveP5, ForwardGeneratedTriplesAttainClassicalMinimum) {
    PhiloxStream rng(37, 0, 0);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n = 4 + 2 * (trial % 3);
        std::size_t k = 2 + trial % 2;
        Povm povm = testing::random_povm(n, k, rng);
        DensityState rho0 = random_density_state(k, rng);
        DensityState rho1 = random_density_state(k, rng);
        double z0 = rng.uniform();
        DetectionProblem p{z0, 1.0 - z0, sequence_distribution(rho0.matrix(), povm),
                           sequence_distribution(rho1.matrix(), povm)};
        RiskPair risks = make_risks(p.zeta0, rho0, p.zeta1, rho1);
        auto sol = solve_p5(risks, povm);
        EXPECT_NEAR(sol.error, min_sum(p), 1e-9);
        expect_valid_solution(sol, p.zeta0, p.zeta1);
        std::vector<ComplexMatrix> ms;
        for (const auto& e : povm.elements()) {
            ms.push_back(e.matrix());
        }
        double grid = testing::beta_grid_min(risks.w1.matrix(), risks.w0.matrix(), ms, 0.05);
        EXPECT_NEAR(sol.error, grid, 1e-9);
    }
}

TEST(SolveP6, RecoversForwardGeneratedPovm) {
    PhiloxStream rng(38, 0, 0);
    for (int trial = 0; trial < 6; ++trial) {
        std::size_t k = 2 + trial % 2;
        Povm povm = testing::random_povm(4, k, rng);
        DensityState rho0 = random_density_state(k, rng);
        DensityState rho1 = random_density_state(k, rng);
        DetectionProblem p{0.5, 0.5, sequence_distribution(rho0.matrix(), povm),
                           sequence_distribution(rho1.matrix(), povm)};
        P6Result r = solve_p6_feasibility(rho0, rho1, p, k);
        EXPECT_LE(r.t_star, 1e-6);
        ASSERT_TRUE(r.povm.has_value());
        auto d0 = sequence_distribution(rho0.matrix(), *r.povm);
        auto d1 = sequence_distribution(rho1.matrix(), *r.povm);
        for (std::size_t i = 0; i < 4; ++i) {
            EXPECT_NEAR(d0[i], p.p0[i], 1e-6);
            EXPECT_NEAR(d1[i], p.p1[i], 1e-6);
        }
    }
}

TEST(SolveP6, ScalarModelCannotMatchTwoDistributions) {
    DensityState one(ComplexMatrix::identity(1));
    DetectionProblem p{0.5, 0.5, {0.7, 0.3}, {0.2, 0.8}};
    P6Result r = solve_p6_feasibility(one, one, p, 1);
    EXPECT_GE(r.t_star, 0.25 - 1e-9);
    EXPECT_FALSE(r.povm.has_value());
}

TEST(SolveP6, IdenticalStatesCannotMatchDifferentDistributions) {
    DensityState rho = DensityState::maximally_mixed(2);
    DetectionProblem p{0.5, 0.5, {0.6, 0.3, 0.1}, {0.1, 0.3, 0.6}};
    P6Result r = solve_p6_feasibility(rho, rho, p, 2);
    EXPECT_GE(r.t_star, 0.25 - 1e-9);
    EXPECT_FALSE(r.povm.has_value());
}

TEST(MinErrorOverOrders, PicksSecondOrderOfExample) {
    OrderedDistribution left{{1, 2}, "Y", {"1,1", "1,2", "2,1", "2,2", "3,1", "3,2"}, kLeftP0, kLeftP1};
    OrderedDistribution right{{2, 1}, "Y", {"1,1", "2,1", "1,2", "2,2", "1,3", "2,3"}, kRightP0, kRightP1};
    auto table = min_error_over_orders({left, right}, 0.4, 0.6);
    ASSERT_EQ(table.rows.size(), 2U);
    EXPECT_EQ(table.rows[0].order, "Y1,Y2");
    EXPECT_NEAR(table.rows[0].error, 0.35, 1e-9);
    EXPECT_NEAR(table.rows[1].error, 0.266, 1e-9);
    EXPECT_EQ(table.best, 1U);
}

TEST(MinErrorOverOrders, IdenticalDistributionsGiveIdenticalErrors) {
    std::vector<double> u(8, 0.125);
    std::vector<OrderedDistribution> dists;
    for (const auto& order : standard_orders()) {
        dists.push_back(OrderedDistribution{order, "D", binary_outcome_labels(3), u, u});
    }
    auto table = min_error_over_orders(dists, 0.5, 0.5);
    for (const auto& r : table.rows) {
        EXPECT_NEAR(r.error, 0.5, 1e-15);
    }
    EXPECT_EQ(table.best, 0U);
    EXPECT_THROW(min_error_over_orders({}, 0.5, 0.5), InvariantViolation);
}

TEST(StateExists, ForwardGeneratedTargetsAreFeasible) {
    PhiloxStream rng(39, 0, 0);
    for (int trial = 0; trial < 10; ++trial) {
        std::size_t k = 2 + trial % 3;
        Povm povm = testing::random_povm(k * k, k, rng);
        DensityState rho = random_density_state(k, rng);
        StateExistenceProblem prob(povm, sequence_distribution(rho.matrix(), povm));
        auto r = state_exists_for_povm(prob);
        ASSERT_EQ(r.verdict, Verdict::Feasible) << r.note;
        EXPECT_LT(r.residual, 1e-6);
        ASSERT_TRUE(r.rho.has_value());
        EXPECT_TRUE(is_psd(*r.rho, 1e-9));
        auto d = sequence_distribution(*r.rho, povm);
        for (std::size_t i = 0; i < d.size(); ++i) {
            EXPECT_NEAR(d[i], prob.target[i], 1e-6);
        }
    }
}

TEST(StateExists, ScalarMismatchYieldsCertificate) {
    Povm povm(std::vector<HermitianMatrix>{HermitianMatrix(ComplexMatrix::identity(1) * 0.5),
                                           HermitianMatrix(ComplexMatrix::identity(1) * 0.5)});
    StateExistenceProblem prob(povm, {0.9, 0.1});
    auto r = state_exists_for_povm(prob);
    ASSERT_EQ(r.verdict, Verdict::Certificate);
    EXPECT_TRUE(verify_certificate(prob, *r.certificate));
}

TEST(StateExists, SymmetricPovmUniformTargetGivesMaximallyMixedState) {
    Povm povm(std::vector<HermitianMatrix>{
        HermitianMatrix(ComplexMatrix::diagonal(std::vector<double>{0.9, 0.1})),
        HermitianMatrix(ComplexMatrix::diagonal(std::vector<double>{0.1, 0.9}))});
    auto r = state_exists_for_povm(StateExistenceProblem(povm, {0.5, 0.5}));
    ASSERT_EQ(r.verdict, Verdict::Feasible);
    EXPECT_LT(max_abs_diff(*r.rho, ComplexMatrix::identity(2) * 0.5), 1e-9);
}

TEST(StateExists, DuplicatedElementsWithDifferentTargetsYieldCertificate) {
    PhiloxStream rng(40, 0, 0);
    Povm base = testing::random_povm(3, 2, rng);
    std::vector<HermitianMatrix> elements{HermitianMatrix(base[0].matrix() * 0.5),
                                          HermitianMatrix(base[0].matrix() * 0.5), base[1], base[2]};
    Povm povm(elements);
    StateExistenceProblem prob(povm, {0.3, 0.1, 0.3, 0.3});
    auto r = state_exists_for_povm(prob);
    ASSERT_EQ(r.verdict, Verdict::Certificate);
    EXPECT_TRUE(verify_certificate(prob, *r.certificate));
}

TEST(StateExists, WithoutPositiveDefiniteElementIsUnknown) {
    auto r = state_exists_for_povm(StateExistenceProblem(Povm::canonical(2), {0.5, 0.5}));
    EXPECT_EQ(r.verdict, Verdict::Unknown);
}

TEST(StateExists, TraceNoteWhenTargetMassDiffersFromOne) {
    Povm povm(std::vector<HermitianMatrix>{
        HermitianMatrix(ComplexMatrix::diagonal(std::vector<double>{0.5, 0.5})),
        HermitianMatrix(ComplexMatrix::diagonal(std::vector<double>{0.5, 0.5}))});
    auto r = state_exists_for_povm(StateExistenceProblem(povm, {0.6, 0.6}));
    ASSERT_EQ(r.verdict, Verdict::Feasible);
    EXPECT_FALSE(r.note.empty());
}

}  // namespace
}  // namespace ncpt
