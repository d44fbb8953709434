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

#include "ncpt/detection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ncpt/error.hpp"

namespace ncpt {

namespace {

void check_distribution(const std::vector<double>& p, const char* name) {
    double sum = 0.0;
    for (double v : p) {
        if (!std::isfinite(v) || v < 0.0) {
            throw InvariantViolation("DetectionProblem.distribution", std::string(name) + " has a negative or non-finite entry");
        }
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-10) {
        throw InvariantViolation("DetectionProblem.distribution", std::string(name) + " does not sum to 1");
    }
}

ComplexMatrix diagonal_of(const std::vector<double>& values) { return ComplexMatrix::diagonal(values); }

ComplexMatrix sum_of(const std::vector<HermitianMatrix>& elements, std::size_t dim) {
    ComplexMatrix s(dim);
    for (const auto& e : elements) {
        s += e.matrix();
    }
    return s;
}

DetectionSolution threshold_solution(const std::vector<double>& cost1, const std::vector<double>& cost0,
                                     const std::vector<HermitianMatrix>& elements, std::size_t dim) {
    DetectionSolution sol;
    sol.policy.resize(cost1.size());
    ComplexMatrix pi1(dim);
    double error = 0.0;
    for (std::size_t i = 0; i < cost1.size(); ++i) {
        bool decide_one = cost1[i] <= cost0[i];
        sol.policy[i] = decide_one ? 1.0 : 0.0;
        if (decide_one) {
            pi1 += elements[i].matrix();
        }
        error += std::min(cost1[i], cost0[i]);
    }
    sol.pi1 = HermitianMatrix(hermitian_part(pi1));
    sol.pi0 = HermitianMatrix(hermitian_part(ComplexMatrix::identity(dim) - pi1));
    sol.error = error;
    return sol;
}

double largest_symmetric_eigenvalue(const RealMatrix& s) {
    ComplexMatrix m(s.rows());
    for (std::size_t i = 0; i < s.rows(); ++i) {
        for (std::size_t j = 0; j < s.cols(); ++j) {
            m(i, j) = s(i, j);
        }
    }
    return eig_hermitian(hermitian_part(m)).values.front();
}

double max_abs_difference(const std::vector<double>& a, const std::vector<double>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    return worst;
}

// Block-structured variables for P6: N Hermitian k x k matrices in basis coordinates.
class PovmVariables {
 public:
    PovmVariables(std::size_t n, const HermitianBasis& basis) : n_(n), basis_(basis) {}

    std::size_t block() const { return basis_.size(); }
    std::size_t total() const { return n_ * block(); }

    ComplexMatrix element(const std::vector<double>& x, std::size_t i) const {
        return basis_.matrix(std::span<const double>(x).subspan(i * block(), block()));
    }

    std::vector<double> pack(const std::vector<ComplexMatrix>& ms) const {
        std::vector<double> x;
        x.reserve(total());
        for (const auto& m : ms) {
            auto c = basis_.coordinates(m);
            x.insert(x.end(), c.begin(), c.end());
        }
        return x;
    }

    std::vector<ComplexMatrix> unpack(const std::vector<double>& x) const {
        std::vector<ComplexMatrix> ms;
        ms.reserve(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            ms.push_back(element(x, i));
        }
        return ms;
    }

    std::vector<double> project_cone(const std::vector<double>& x) const {
        std::vector<double> out;
        out.reserve(total());
        for (std::size_t i = 0; i < n_; ++i) {
            auto c = basis_.coordinates(project_psd(element(x, i)));
            out.insert(out.end(), c.begin(), c.end());
        }
        return out;
    }

 private:
    std::size_t n_;
    const HermitianBasis& basis_;
};

double p6_measure(const std::vector<ComplexMatrix>& ms, const DensityState& rho0, const DensityState& rho1,
                  const DetectionProblem& prob) {
    const std::size_t k = rho0.dim();
    double t = 0.0;
    ComplexMatrix sum(k);
    for (std::size_t i = 0; i < ms.size(); ++i) {
        t = std::max(t, std::abs(trace_of_product(rho0.matrix(), ms[i]).real() - prob.p0[i]));
        t = std::max(t, std::abs(trace_of_product(rho1.matrix(), ms[i]).real() - prob.p1[i]));
        t = std::max(t, -min_eigenvalue(hermitian_part(ms[i])));
        sum += ms[i];
    }
    t = std::max(t, max_abs_diff(sum, ComplexMatrix::identity(k)));
    return t;
}

std::optional<std::vector<ComplexMatrix>> renormalize(const std::vector<ComplexMatrix>& ms, std::size_t k) {
    ComplexMatrix s(k);
    std::vector<ComplexMatrix> psd;
    psd.reserve(ms.size());
    for (const auto& m : ms) {
        psd.push_back(project_psd(hermitian_part(m)));
        s += psd.back();
    }
    s = hermitian_part(s);
    if (min_eigenvalue(s) <= 1e-12) {
        return std::nullopt;
    }
    ComplexMatrix inv_sqrt = hermitian_function(s, [](double l) { return 1.0 / std::sqrt(l); });
    std::vector<ComplexMatrix> out;
    out.reserve(ms.size());
    for (const auto& m : psd) {
        out.push_back(hermitian_part(inv_sqrt * m * inv_sqrt));
    }
    return out;
}

ComplexMatrix combination(const StateExistenceProblem& problem, const std::vector<double>& v) {
    ComplexMatrix m(problem.povm.dim());
    for (std::size_t i = 0; i < v.size(); ++i) {
        m += problem.povm[i].matrix() * Complex(v[i]);
    }
    return hermitian_part(m);
}

std::vector<double> psd_coordinates(const HermitianBasis& basis, const std::vector<double>& x) {
    return basis.coordinates(project_psd(basis.matrix(x)));
}

}  // namespace

void DetectionProblem::validate() const {
    if (!std::isfinite(zeta0) || !std::isfinite(zeta1) || zeta0 < 0.0 || zeta1 < 0.0 ||
        std::abs(zeta0 + zeta1 - 1.0) > 1e-10) {
        throw InvariantViolation("DetectionProblem.priors", "priors must be nonnegative and sum to 1");
    }
    if (p0.size() != p1.size()) {
        throw InvariantViolation("DetectionProblem.length", "p0 and p1 differ in length");
    }
    if (p0.size() < 2) {
        throw InvariantViolation("DetectionProblem.length", "at least two outcomes are required");
    }
    check_distribution(p0, "p0");
    check_distribution(p1, "p1");
}

Povm::Povm(std::vector<HermitianMatrix> elements, std::vector<std::string> labels)
    : elements_(std::move(elements)), labels_(std::move(labels)) {
    if (elements_.empty()) {
        throw InvariantViolation("Povm.complete", "a POVM needs at least one element");
    }
    const std::size_t k = elements_.front().dim();
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        if (elements_[i].dim() != k) {
            throw InvariantViolation("Povm.dimension", "elements differ in dimension");
        }
        double lmin = min_eigenvalue(elements_[i].matrix());
        if (lmin < -kPsdTolerance) {
            throw InvariantViolation("Povm.psd", "element " + std::to_string(i) + " has eigenvalue " +
                                                     std::to_string(lmin));
        }
    }
    double defect = max_abs_diff(sum_of(elements_, k), ComplexMatrix::identity(k));
    if (defect > kCompletenessTolerance) {
        throw InvariantViolation("Povm.complete", "elements sum to identity only within " + std::to_string(defect));
    }
    if (labels_.empty()) {
        for (std::size_t i = 0; i < elements_.size(); ++i) {
            labels_.push_back(std::to_string(i + 1));
        }
    } else if (labels_.size() != elements_.size()) {
        throw InvariantViolation("Povm.labels", "label count differs from element count");
    }
}

bool Povm::is_pvm(double tol) const {
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        const ComplexMatrix& a = elements_[i].matrix();
        if (max_abs_diff(a * a, a) > tol) {
            return false;
        }
        for (std::size_t j = i + 1; j < elements_.size(); ++j) {
            if ((a * elements_[j].matrix()).max_abs() > tol) {
                return false;
            }
        }
    }
    return true;
}

std::optional<std::size_t> Povm::positive_definite_element(double tol) const {
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        if (min_eigenvalue(elements_[i].matrix()) > tol) {
            return i;
        }
    }
    return std::nullopt;
}

Povm Povm::canonical(std::size_t n) {
    std::vector<HermitianMatrix> elements;
    elements.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        ComplexMatrix e(n);
        e(i, i) = 1.0;
        elements.emplace_back(e);
    }
    return Povm(std::move(elements));
}

RiskPair make_risks(double zeta0, const DensityState& rho0, double zeta1, const DensityState& rho1) {
    if (rho0.dim() != rho1.dim()) {
        throw DimensionMismatch("make_risks: states differ in dimension");
    }
    return RiskPair{HermitianMatrix(rho0.matrix() * Complex(zeta0)), HermitianMatrix(rho1.matrix() * Complex(zeta1))};
}

DetectionSolution classical_min_error(const DetectionProblem& prob) {
    prob.validate();
    const std::size_t n = prob.size();
    std::vector<double> cost1(n);
    std::vector<double> cost0(n);
    for (std::size_t i = 0; i < n; ++i) {
        cost1[i] = prob.zeta0 * prob.p0[i];
        cost0[i] = prob.zeta1 * prob.p1[i];
    }
    return threshold_solution(cost1, cost0, Povm::canonical(n).elements(), n);
}

PvmModel build_pvm_model(const DetectionProblem& prob) {
    prob.validate();
    return PvmModel{DensityState::assume_valid(diagonal_of(prob.p0)), DensityState::assume_valid(diagonal_of(prob.p1)),
                    Povm::canonical(prob.size())};
}

DetectionSolution solve_pvm_detection(const RiskPair& risks, const Povm& pvm) {
    if (risks.w0.dim() != pvm.dim() || risks.w1.dim() != pvm.dim()) {
        throw DimensionMismatch("solve_pvm_detection: risk and measurement dimensions differ");
    }
    if (!pvm.is_pvm()) {
        throw NotAPvm("solve_pvm_detection: elements are not orthogonal projections");
    }
    return solve_p5(risks, pvm);
}

bool holevo_conditions_check(const RiskPair& risks, const ComplexMatrix& pi0, const ComplexMatrix& pi1, double tol) {
    const ComplexMatrix& w0 = risks.w0.matrix();
    const ComplexMatrix& w1 = risks.w1.matrix();
    ComplexMatrix o = w0 * pi0 + w1 * pi1;
    if (hermitian_defect(o) > tol) {
        return false;
    }
    ComplexMatrix oh = hermitian_part(o);
    return is_psd(hermitian_part(w0 - oh), tol) && is_psd(hermitian_part(w1 - oh), tol);
}

Povm order_povm(const std::vector<Povm>& pvms) {
    if (pvms.empty()) {
        throw DimensionMismatch("order_povm: no measurements given");
    }
    const std::size_t k = pvms.front().dim();
    for (const auto& p : pvms) {
        if (p.dim() != k) {
            throw DimensionMismatch("order_povm: measurements differ in dimension");
        }
    }
    std::vector<HermitianMatrix> elements;
    std::vector<std::string> labels;
    std::vector<std::size_t> idx(pvms.size(), 0);
    while (true) {
        ComplexMatrix x = ComplexMatrix::identity(k);
        std::string label;
        for (std::size_t m = 0; m < pvms.size(); ++m) {
            x = pvms[m][idx[m]].matrix() * x;
            label += (m ? "," : "") + std::to_string(idx[m] + 1);
        }
        elements.emplace_back(hermitian_part(x.adjoint() * x));
        labels.push_back(std::move(label));
        std::size_t pos = pvms.size();
        while (pos > 0) {
            --pos;
            if (++idx[pos] < pvms[pos].size()) {
                break;
            }
            idx[pos] = 0;
            if (pos == 0) {
                return Povm(std::move(elements), std::move(labels));
            }
        }
    }
}

std::vector<double> sequence_distribution(const ComplexMatrix& rho, const Povm& povm) {
    if (rho.dim() != povm.dim()) {
        throw DimensionMismatch("sequence_distribution: state and POVM dimensions differ");
    }
    std::vector<double> p;
    p.reserve(povm.size());
    for (const auto& e : povm.elements()) {
        double v = trace_of_product(rho, e.matrix()).real();
        if (v < 0.0 && v >= -1e-10) {
            v = 0.0;
        }
        p.push_back(v);
    }
    return p;
}

DetectionSolution solve_p5(const RiskPair& risks, const Povm& povm) {
    if (risks.w0.dim() != povm.dim() || risks.w1.dim() != povm.dim()) {
        throw DimensionMismatch("solve_p5: risk and measurement dimensions differ");
    }
    std::vector<double> cost1;
    std::vector<double> cost0;
    for (const auto& e : povm.elements()) {
        cost1.push_back(trace_of_product(risks.w1.matrix(), e.matrix()).real());
        cost0.push_back(trace_of_product(risks.w0.matrix(), e.matrix()).real());
    }
    return threshold_solution(cost1, cost0, povm.elements(), povm.dim());
}

P6Result solve_p6_feasibility(const DensityState& rho0, const DensityState& rho1, const DetectionProblem& prob,
                              std::size_t k, const P6Options& options) {
    prob.validate();
    if (rho0.dim() != k || rho1.dim() != k) {
        throw DimensionMismatch("solve_p6_feasibility: state dimension differs from k");
    }
    const std::size_t n = prob.size();
    HermitianBasis basis(k);
    PovmVariables vars(n, basis);
    const std::size_t b = basis.size();

    RealMatrix c(2 * n + b, vars.total());
    std::vector<double> d(2 * n + b, 0.0);
    auto r0 = basis.coordinates(rho0.matrix());
    auto r1 = basis.coordinates(rho1.matrix());
    auto id = basis.coordinates(ComplexMatrix::identity(k));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < b; ++j) {
            c(i, i * b + j) = r0[j];
            c(n + i, i * b + j) = r1[j];
            c(2 * n + j, i * b + j) = 1.0;
        }
        d[i] = prob.p0[i];
        d[n + i] = prob.p1[i];
    }
    for (std::size_t j = 0; j < b; ++j) {
        d[2 * n + j] = id[j];
    }
    AffineProjector affine(std::move(c), std::move(d));

    std::vector<ComplexMatrix> start(n, ComplexMatrix::identity(k) * Complex(1.0 / static_cast<double>(n)));
    std::vector<double> x = vars.pack(start);
    std::vector<double> y = x;
    std::vector<double> p(x.size(), 0.0);
    std::vector<double> q(x.size(), 0.0);

    P6Result result;
    for (result.iterations = 1; result.iterations <= options.max_iterations; ++result.iterations) {
        std::vector<double> xp(x.size());
        for (std::size_t j = 0; j < x.size(); ++j) {
            xp[j] = x[j] + p[j];
        }
        std::vector<double> y_next = affine.project(xp);
        for (std::size_t j = 0; j < x.size(); ++j) {
            p[j] = xp[j] - y_next[j];
        }
        std::vector<double> yq(x.size());
        for (std::size_t j = 0; j < x.size(); ++j) {
            yq[j] = y_next[j] + q[j];
        }
        std::vector<double> x_next = vars.project_cone(yq);
        for (std::size_t j = 0; j < x.size(); ++j) {
            q[j] = yq[j] - x_next[j];
        }
        double move = std::max(max_abs_difference(x_next, x), max_abs_difference(y_next, y));
        x = std::move(x_next);
        y = std::move(y_next);
        if (move < options.move_tolerance) {
            result.converged = true;
            break;
        }
    }
    result.iterations = std::min(result.iterations, options.max_iterations);

    auto cone_point = vars.unpack(x);
    result.t_star = std::min(p6_measure(cone_point, rho0, rho1, prob), p6_measure(vars.unpack(y), rho0, rho1, prob));
    if (auto cleaned = renormalize(cone_point, k)) {
        double t_clean = p6_measure(*cleaned, rho0, rho1, prob);
        result.t_star = std::min(result.t_star, t_clean);
        if (t_clean <= options.accept_tolerance) {
            std::vector<HermitianMatrix> elements;
            elements.reserve(n);
            for (const auto& m : *cleaned) {
                elements.emplace_back(m);
            }
            result.povm = Povm(std::move(elements));
        }
    }
    return result;
}

OrderErrorTable min_error_over_orders(const std::vector<OrderedDistribution>& dists, double zeta0, double zeta1) {
    if (dists.empty()) {
        throw InvariantViolation("min_error_over_orders.nonempty", "no orders given");
    }
    OrderErrorTable table;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < dists.size(); ++r) {
        const auto& dist = dists[r];
        dist.validate();
        DetectionProblem prob{zeta0, zeta1, dist.p0, dist.p1};
        double error = classical_min_error(prob).error;
        table.rows.push_back(OrderError{dist.label(), error});
        if (error < best) {
            best = error;
            table.best = r;
        }
    }
    return table;
}

StateExistenceProblem::StateExistenceProblem(Povm p, std::vector<double> t)
    : povm(std::move(p)), target(std::move(t)), basis(povm.dim()), a(povm.size(), povm.dim() * povm.dim()) {
    if (target.size() != povm.size()) {
        throw DimensionMismatch("StateExistenceProblem: target length differs from POVM size");
    }
    for (std::size_t i = 0; i < povm.size(); ++i) {
        auto row = basis.coordinates(povm[i].matrix());
        for (std::size_t j = 0; j < row.size(); ++j) {
            a(i, j) = row[j];
        }
    }
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Feasible:
            return "Feasible";
        case Verdict::Certificate:
            return "Certificate";
        case Verdict::Unknown:
            break;
    }
    return "Unknown";
}

bool verify_certificate(const StateExistenceProblem& problem, const std::vector<double>& v, double tol) {
    if (v.size() != problem.target.size()) {
        return false;
    }
    double vp = std::inner_product(v.begin(), v.end(), problem.target.begin(), 0.0);
    return vp < -tol && min_eigenvalue(combination(problem, v)) >= -tol;
}

StateExistenceResult state_exists_for_povm(const StateExistenceProblem& problem, const StateExistenceOptions& options) {
    StateExistenceResult result;
    const auto pd = problem.povm.positive_definite_element();
    if (!pd) {
        result.note = "no positive definite POVM element";
        return result;
    }
    const std::size_t k = problem.povm.dim();
    const HermitianBasis& basis = problem.basis;
    AffineProjector affine(problem.a, problem.target);

    double mass = std::accumulate(problem.target.begin(), problem.target.end(), 0.0);
    std::vector<double> x =
        basis.coordinates(ComplexMatrix::identity(k) * Complex(std::max(mass, 0.0) / static_cast<double>(k)));
    x = psd_coordinates(basis, affine.project(x));
    for (std::size_t it = 0; it < options.max_iterations; ++it) {
        if (affine.residual(x) < options.feasible_residual * 1e-3) {
            break;
        }
        std::vector<double> next = psd_coordinates(basis, affine.project(x));
        double move = max_abs_difference(next, x);
        x = std::move(next);
        if (move < options.move_tolerance) {
            break;
        }
    }
    result.residual = affine.residual(x);
    if (result.residual < options.feasible_residual) {
        result.verdict = Verdict::Feasible;
        ComplexMatrix rho = project_psd(basis.matrix(x));
        double tr = rho.trace().real();
        if (std::abs(tr - 1.0) > 1e-6) {
            result.note = "trace of rho is " + std::to_string(tr);
        }
        result.rho = std::move(rho);
        return result;
    }

    // Projected accelerated gradient on 0.5 |A x - P|^2 over the PSD cone.
    const RealMatrix& a = problem.a;
    const double lipschitz = largest_symmetric_eigenvalue(a * a.transpose());
    std::vector<double> z = x;
    double t = 1.0;
    for (std::size_t it = 0; it < options.max_iterations; ++it) {
        std::vector<double> r = a.apply(z);
        for (std::size_t i = 0; i < r.size(); ++i) {
            r[i] -= problem.target[i];
        }
        std::vector<double> g = a.apply_transpose(r);
        std::vector<double> step(z.size());
        for (std::size_t j = 0; j < z.size(); ++j) {
            step[j] = z[j] - g[j] / lipschitz;
        }
        std::vector<double> next = psd_coordinates(basis, step);
        double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
        double move = max_abs_difference(next, x);
        for (std::size_t j = 0; j < z.size(); ++j) {
            z[j] = next[j] + ((t - 1.0) / t_next) * (next[j] - x[j]);
        }
        x = std::move(next);
        t = t_next;
        if (move < options.move_tolerance) {
            break;
        }
    }
    std::vector<double> v = a.apply(x);
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] -= problem.target[i];
    }

    double lmin = min_eigenvalue(combination(problem, v));
    if (lmin < 0.0) {
        ComplexMatrix total(k);
        for (const auto& e : problem.povm.elements()) {
            total += e.matrix();
        }
        if (max_abs_diff(total, ComplexMatrix::identity(k)) <= 1e-8) {
            for (double& vi : v) {
                vi -= lmin;
            }
        } else {
            v[*pd] -= lmin / min_eigenvalue(problem.povm[*pd].matrix());
        }
    }
    double norm = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
    if (norm > 0.0) {
        for (double& vi : v) {
            vi /= norm;
        }
    }
    if (verify_certificate(problem, v, options.certificate_tolerance)) {
        result.verdict = Verdict::Certificate;
        result.certificate = std::move(v);
    } else {
        result.note = "neither a state nor a separating certificate was certified";
    }
    return result;
}

}  // namespace ncpt
