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

#include "ncpt/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "ncpt/error.hpp"

namespace ncpt::io {

namespace {

template <class T>
T get_or(const Json& j, const char* key, T fallback) {
    if (!j.contains(key)) {
        return fallback;
    }
    try {
        return j.at(key).get<T>();
    } catch (const Json::exception& e) {
        throw InputError(std::string("field '") + key + "': " + e.what());
    }
}

template <class T>
T get_required(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) {
        throw InputError(std::string("missing field '") + key + "'");
    }
    try {
        return j.at(key).get<T>();
    } catch (const Json::exception& e) {
        throw InputError(std::string("field '") + key + "': " + e.what());
    }
}

std::pair<double, double> priors_from(const Json& j, std::pair<double, double> fallback) {
    if (!j.contains("priors")) {
        return fallback;
    }
    auto p = get_required<std::vector<double>>(j, "priors");
    if (p.size() != 2) {
        throw InputError("'priors' must hold exactly two values");
    }
    return {p[0], p[1]};
}

Json real_rows(const ComplexMatrix& m, bool imaginary) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.dim(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.dim(); ++c) {
            row.push_back(imaginary ? m(r, c).imag() : m(r, c).real());
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<std::vector<double>> rows_from(const Json& j) {
    try {
        auto rows = j.get<std::vector<std::vector<double>>>();
        for (const auto& row : rows) {
            if (row.size() != rows.size()) {
                throw InputError("matrix rows must form a square array");
            }
        }
        return rows;
    } catch (const Json::exception& e) {
        throw InputError(std::string("matrix: ") + e.what());
    }
}

std::string cell(const ConditionalEstimate& e, bool defined) { return defined ? format_double(e.estimate) : "NA"; }

}  // namespace

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open " + path);
    }
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw InputError(path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const Json& j) { write_text_file(path, j.dump(2) + "\n"); }

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw InputError("cannot write " + path);
    }
    out << text;
    if (!out) {
        throw InputError("failed writing " + path);
    }
}

Json to_json(const ObserverSpec& spec) {
    return Json{{"pmf_h0", spec.pmf_h0},
                {"pmf_h1", spec.pmf_h1},
                {"alpha", spec.alpha},
                {"beta", spec.beta},
                {"max_samples", spec.max_samples}};
}

ObserverSpec observer_from_json(const Json& j) {
    ObserverSpec spec;
    spec.pmf_h0 = get_required<std::vector<double>>(j, "pmf_h0");
    spec.pmf_h1 = get_required<std::vector<double>>(j, "pmf_h1");
    spec.alpha = get_or(j, "alpha", spec.alpha);
    spec.beta = get_or(j, "beta", spec.beta);
    spec.max_samples = get_or(j, "max_samples", spec.max_samples);
    return spec;
}

Json to_json(const SimConfig& config) {
    Json observers = Json::array();
    for (const auto& o : config.observers) {
        observers.push_back(to_json(o));
    }
    return Json{{"observers", observers},
                {"runs", config.runs},
                {"seed", config.seed},
                {"priors", {config.prior_h0, config.prior_h1}},
                {"preference", config.preference},
                {"threads", config.threads}};
}

SimConfig sim_config_from_json(const Json& j) {
    if (!j.is_object()) {
        throw InputError("simulation config must be a JSON object");
    }
    SimConfig config;
    if (j.contains("observers")) {
        const Json& obs = j.at("observers");
        if (!obs.is_array()) {
            throw InputError("'observers' must be an array");
        }
        for (const auto& o : obs) {
            config.observers.push_back(observer_from_json(o));
        }
    } else {
        config = SimConfig::reference(get_or(j, "alpha", 0.05), get_or(j, "beta", 0.05));
    }
    config.runs = get_or(j, "runs", config.runs);
    config.seed = get_or(j, "seed", config.seed);
    auto [p0, p1] = priors_from(j, {config.prior_h0, config.prior_h1});
    config.prior_h0 = p0;
    config.prior_h1 = p1;
    config.preference = get_or(j, "preference", config.preference);
    config.threads = get_or(j, "threads", config.threads);
    return config;
}

Json to_json(const CountTable& table) {
    Json counts = Json::object();
    for (int h = 0; h < 2; ++h) {
        Json per = Json::object();
        for (const auto& [seq, n] : table.counts(h)) {
            per[sequence_key(seq)] = n;
        }
        counts[std::to_string(h)] = std::move(per);
    }
    return Json{{"runs", {{"0", table.total(0)}, {"1", table.total(1)}}}, {"counts", counts}};
}

CountTable count_table_from_json(const Json& j) {
    CountTable table;
    const Json counts = get_required<Json>(j, "counts");
    if (!counts.is_object()) {
        throw InputError("'counts' must be an object keyed by hypothesis");
    }
    for (const auto& [hkey, per] : counts.items()) {
        if (hkey != "0" && hkey != "1") {
            throw InputError("hypothesis keys must be \"0\" or \"1\"");
        }
        int h = hkey == "1" ? 1 : 0;
        if (!per.is_object()) {
            throw InputError("counts for each hypothesis must be an object");
        }
        for (const auto& [key, n] : per.items()) {
            if (!n.is_number_unsigned()) {
                throw InputError("count for '" + key + "' must be a nonnegative integer");
            }
            try {
                table.add(h, parse_sequence_key(key), n.get<std::uint64_t>());
            } catch (const InvariantViolation& e) {
                throw InputError(e.what());
            }
        }
    }
    if (j.contains("runs")) {
        const Json& runs = j.at("runs");
        for (int h = 0; h < 2; ++h) {
            std::string key = std::to_string(h);
            if (runs.contains(key) && runs.at(key).get<std::uint64_t>() != table.total(h)) {
                throw InputError("run total for hypothesis " + key + " does not match its counts");
            }
        }
    }
    return table;
}

Json to_json(const OrderedDistribution& dist) {
    return Json{{"order", dist.order},
                {"symbol", dist.symbol},
                {"label", dist.label()},
                {"outcomes", dist.outcomes},
                {"p0", dist.p0},
                {"p1", dist.p1}};
}

OrderedDistribution ordered_distribution_from_json(const Json& j) {
    OrderedDistribution dist;
    dist.order = get_required<std::vector<int>>(j, "order");
    dist.symbol = get_or<std::string>(j, "symbol", "D");
    dist.p0 = get_required<std::vector<double>>(j, "p0");
    dist.p1 = get_required<std::vector<double>>(j, "p1");
    dist.outcomes = get_or(j, "outcomes", binary_outcome_labels(dist.p0.size()));
    try {
        dist.validate();
    } catch (const InvariantViolation& e) {
        throw InputError(e.what());
    }
    return dist;
}

Json to_json(const ComplexMatrix& m) {
    bool real = true;
    for (const auto& z : m.entries()) {
        if (z.imag() != 0.0) {
            real = false;
            break;
        }
    }
    if (real) {
        return real_rows(m, false);
    }
    return Json{{"re", real_rows(m, false)}, {"im", real_rows(m, true)}};
}

ComplexMatrix matrix_from_json(const Json& j) {
    if (j.is_array()) {
        auto rows = rows_from(j);
        if (rows.empty()) {
            throw InputError("matrix must be nonempty");
        }
        return ComplexMatrix::from_rows(rows);
    }
    if (!j.is_object() || !j.contains("re")) {
        throw InputError("matrix must be a nested array or an object with 're' and 'im'");
    }
    auto re = rows_from(j.at("re"));
    auto im = j.contains("im") ? rows_from(j.at("im")) : std::vector<std::vector<double>>{};
    if (re.empty() || (!im.empty() && im.size() != re.size())) {
        throw InputError("'re' and 'im' must have the same nonzero size");
    }
    ComplexMatrix m(re.size());
    for (std::size_t r = 0; r < re.size(); ++r) {
        for (std::size_t c = 0; c < re.size(); ++c) {
            m(r, c) = Complex(re[r][c], im.empty() ? 0.0 : im[r][c]);
        }
    }
    return m;
}

Json to_json(const DetectionProblem& prob) {
    return Json{{"priors", {prob.zeta0, prob.zeta1}}, {"p0", prob.p0}, {"p1", prob.p1}};
}

DetectionProblem detection_problem_from_json(const Json& j) {
    DetectionProblem prob;
    auto [z0, z1] = priors_from(j, {0.5, 0.5});
    prob.zeta0 = z0;
    prob.zeta1 = z1;
    prob.p0 = get_required<std::vector<double>>(j, "p0");
    prob.p1 = get_required<std::vector<double>>(j, "p1");
    try {
        prob.validate();
    } catch (const InvariantViolation& e) {
        throw InputError(e.what());
    }
    return prob;
}

Json to_json(const DetectionSolution& sol) {
    return Json{{"error", sol.error}, {"policy", sol.policy}, {"pi1", to_json(sol.pi1.matrix())},
                {"pi0", to_json(sol.pi0.matrix())}};
}

Json to_json(const Povm& povm) {
    Json elements = Json::array();
    for (const auto& e : povm.elements()) {
        elements.push_back(to_json(e.matrix()));
    }
    return Json{{"elements", elements}, {"labels", povm.labels()}};
}

Povm povm_from_json(const Json& j) {
    const Json elements = get_required<Json>(j, "elements");
    if (!elements.is_array() || elements.empty()) {
        throw InputError("'elements' must be a nonempty array");
    }
    std::vector<HermitianMatrix> ms;
    for (const auto& e : elements) {
        try {
            ms.emplace_back(matrix_from_json(e), 1e-9);
        } catch (const InvariantViolation& err) {
            throw InputError(err.what());
        }
    }
    try {
        return Povm(std::move(ms), get_or(j, "labels", std::vector<std::string>{}));
    } catch (const InvariantViolation& err) {
        throw InputError(err.what());
    }
}

Json to_json(const AxiomReport& report) {
    Json checks = Json::array();
    for (const auto& c : report.checks) {
        checks.push_back(
            Json{{"axiom", c.axiom}, {"instance", c.instance}, {"max_deviation", c.max_deviation}, {"pass", c.pass}});
    }
    return Json{{"all_passed", report.all_passed()},
                {"checks_run", report.checks.size()},
                {"failures", report.failures()},
                {"checks", checks}};
}

Json to_json(const OrderErrorTable& table) {
    Json rows = Json::array();
    for (const auto& r : table.rows) {
        rows.push_back(Json{{"order", r.order}, {"error", r.error}});
    }
    return Json{{"rows", rows}, {"best", table.rows.at(table.best).order}, {"best_index", table.best}};
}

Json to_json(const P6Result& result) {
    Json j{{"t_star", result.t_star}, {"converged", result.converged}, {"iterations", result.iterations}};
    j["povm"] = result.povm ? to_json(*result.povm) : Json(nullptr);
    return j;
}

Json to_json(const StateExistenceResult& result) {
    Json j{{"verdict", to_string(result.verdict)}, {"residual", result.residual}, {"note", result.note}};
    j["rho"] = result.rho ? to_json(*result.rho) : Json(nullptr);
    j["certificate"] = result.certificate ? Json(*result.certificate) : Json(nullptr);
    return j;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') {
            out += '"';
        }
        out += ch;
    }
    out += '"';
    return out;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    bool quoted = false;
    bool any = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char ch = text[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += ch;
            }
            continue;
        }
        any = true;
        if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            row.push_back(std::move(field));
            field.clear();
        } else if (ch == '\n' || ch == '\r') {
            if (ch == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
                ++i;
            }
            row.push_back(std::move(field));
            field.clear();
            rows.push_back(std::move(row));
            row.clear();
            any = false;
        } else {
            field += ch;
        }
    }
    if (quoted) {
        throw InputError("unterminated quoted CSV field");
    }
    if (any || !field.empty() || !row.empty()) {
        row.push_back(std::move(field));
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_runs_csv_header(std::ostream& os) { os << "h,obs_order,d_first,d_second,d_third,tau1,tau2,tau3\n"; }

void write_runs_csv_row(std::ostream& os, const RunRecord& record) {
    os << record.h << ',';
    for (std::size_t i = 0; i < record.decisions.size(); ++i) {
        os << (i ? "-" : "") << record.decisions[i].observer;
    }
    for (std::size_t i = 0; i < 3; ++i) {
        os << ',';
        if (i < record.decisions.size()) {
            os << record.decisions[i].value;
        }
    }
    for (std::size_t i = 0; i < 3; ++i) {
        os << ',';
        if (i < record.stop_times.size()) {
            os << record.stop_times[i];
        }
    }
    os << '\n';
}

std::vector<ConditionalRow> conditional_rows(const CountTable& table, int h) {
    std::vector<ConditionalRow> rows;
    auto name = [](int id, int value) { return "T_E" + std::to_string(id) + (value ? "" : "'"); };
    // Block 1 collects D2 before D1, block 2 collects D1 before D2. Within a
    // block rows run over (D1, D2) = (0,0), (0,1), (1,0), (1,1).
    for (int block = 0; block < 2; ++block) {
        for (int d1 = 0; d1 < 2; ++d1) {
            for (int d2 = 0; d2 < 2; ++d2) {
                Decision e1{1, d1};
                Decision e2{2, d2};
                const Decision& first = block == 0 ? e2 : e1;
                const Decision& second = block == 0 ? e1 : e2;
                ConditionalRow row;
                row.operation = name(second.observer, second.value) + "∘" + name(first.observer, first.value);
                try {
                    row.e3_prime = ordered_conditional(table, first, second, Decision{3, 0}, h);
                    row.e3 = ordered_conditional(table, first, second, Decision{3, 1}, h);
                } catch (const ZeroDenominator&) {
                    row.defined = false;
                }
                rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

std::string conditionals_csv(const std::vector<ConditionalRow>& rows) {
    std::ostringstream os;
    os << "operation,E3',E3\n";
    for (const auto& r : rows) {
        os << csv_field(r.operation) << ',' << cell(r.e3_prime, r.defined) << ',' << cell(r.e3, r.defined) << '\n';
    }
    return os.str();
}

std::string orders_csv(const OrderErrorTable& table) {
    std::ostringstream os;
    os << "Order of measurements,Probability of error\n";
    for (const auto& r : table.rows) {
        os << csv_field(r.order) << ',' << format_double(r.error) << '\n';
    }
    return os.str();
}

std::string distributions_csv(const std::vector<OrderedDistribution>& dists) {
    std::ostringstream os;
    std::size_t longest = 0;
    for (std::size_t d = 0; d < dists.size(); ++d) {
        os << (d ? "," : "") << csv_field("[" + dists[d].label() + "]") << ",h=0,h=1";
        longest = std::max(longest, dists[d].outcomes.size());
    }
    os << '\n';
    for (std::size_t r = 0; r < longest; ++r) {
        for (std::size_t d = 0; d < dists.size(); ++d) {
            os << (d ? "," : "");
            if (r < dists[d].outcomes.size()) {
                os << csv_field(dists[d].outcomes[r]) << ',' << format_double(dists[d].p0[r]) << ','
                   << format_double(dists[d].p1[r]);
            } else {
                os << ",,";
            }
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace ncpt::io
